// Acceptance gate: runs one criterion (argv[1] = 1..10) or all of them, and
// prints one pass/fail line per criterion with its measured values.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "isospec/verify.hpp"

namespace {

void print_result(const isospec::CriterionResult& r) {
  std::printf("criterion %d (%s): %s\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL");
  for (const auto& [key, value] : r.metrics) std::printf("    %s = %.10g\n", key.c_str(), value);
  for (const std::string& note : r.notes) std::printf("    note: %s\n", note.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 2) seed = std::strtoull(argv[2], nullptr, 10);
  bool all_pass = true;
  if (argc > 1) {
    const isospec::CriterionResult r = isospec::run_criterion(std::atoi(argv[1]), seed);
    print_result(r);
    all_pass = r.pass;
  } else {
    for (const isospec::CriterionResult& r : isospec::run_all_criteria(seed)) {
      print_result(r);
      all_pass = all_pass && r.pass;
    }
  }
  return all_pass ? 0 : 1;
}

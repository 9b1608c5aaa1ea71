#pragma once

#include <map>
#include <string>
#include <vector>

#include "isospec/models.hpp"

namespace isospec {

// One acceptance criterion outcome: measured values plus pass/fail.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;
};

// The fixed model zoo exercised by the verification suite.
std::vector<std::pair<std::string, ModelInstance>> model_zoo();

inline constexpr int kNumCriteria = 10;

// Run one criterion (1-based id). The seed feeds subset sampling only; the
// pass/fail pattern is seed-independent by contract.
CriterionResult run_criterion(int id, std::uint64_t seed = 0);
std::vector<CriterionResult> run_all_criteria(std::uint64_t seed = 0);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace isospec

#pragma once

#include <stdexcept>
#include <string>

namespace isospec {

// Invalid model specification or malformed input file.
struct spec_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Violated operation precondition (inadmissible subset, degenerate ground
// state without override, non-stoquastic input to a stoquastic-only bound, ...).
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Iterative solver did not converge within its iteration budget.
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace isospec

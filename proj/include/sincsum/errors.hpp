#pragma once

#include <stdexcept>

namespace sincsum {

// Argument outside the mathematical domain of an operation.
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Evaluation at a pole of the gamma function or of a series coefficient.
struct pole_error : domain_error {
  using domain_error::domain_error;
};

// An iterative method exhausted its budget without meeting its tolerance.
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A family or scenario specification violating a structural constraint.
struct invalid_spec_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace sincsum

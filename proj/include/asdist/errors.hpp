#pragma once

#include <stdexcept>
#include <string>

namespace asdist {

/// Rejected user input (bad model parameters, malformed modules, ...).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Valid-looking input that the implemented formulas cannot handle,
/// e.g. genus >= 2 without the exceptional conductor counts.
class unsupported_input : public input_error {
 public:
  using input_error::input_error;
};

/// An exact identity that must hold did not (negative or fractional count).
/// Signals inconsistent model data or a bug.
class consistency_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical work could not certify its result at the working precision.
class precision_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A brute-force enumeration would exceed its configured budget.
class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace asdist

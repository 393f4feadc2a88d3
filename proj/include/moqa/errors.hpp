#ifndef MOQA_ERRORS_HPP
#define MOQA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace moqa {

/// Invalid input: dimension mismatch, asymmetric matrix, bad flag value, ...
/// CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A requested computation exceeds a configured resource budget
/// (allocation count, dense slot count, brute-force cap).
/// CLI maps this to exit code 3.
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative eigenvalue solve did not reach the residual tolerance
/// within the iteration cap. Carries the last residual.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

/// A coefficient over- or underflowed to a non-finite value.
class NumericRangeError : public std::runtime_error {
public:
  explicit NumericRangeError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace moqa

#endif

#ifndef WPG_ERRORS_HPP
#define WPG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wpg {

// Input outside an operation's domain (|z| >= 1, p <= 1, invalid order, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Operands with incompatible shapes or index ranges.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Beltrami coefficient with sup norm >= 1 handed to the solver.
struct ContractionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-compactly supported input to P or T.
struct UnsupportedInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Two independent computations of the same quantity disagree.
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Vanishing derivative in the Schwarzian.
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operator outside the chart (non-positive id - phi phi*).
struct ChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Basis not orthonormal, or a vector that should be unit is not.
struct NormalizationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Invalid run configuration (bad truncation, tolerance, suite name, ...).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace wpg

#endif

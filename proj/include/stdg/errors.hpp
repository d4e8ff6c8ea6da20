#ifndef STDG_ERRORS_HPP
#define STDG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stdg {

/// Thrown when a state violates the positivity requirements of its system
/// (density, pressure, or water height at or below the admissibility floor).
class AdmissibilityError : public std::runtime_error {
public:
  AdmissibilityError(std::string quantity, double value, std::string where = {})
      : std::runtime_error("inadmissible state: " + quantity + " = " +
                           std::to_string(value) +
                           (where.empty() ? std::string{} : " at " + where)),
        quantity_(std::move(quantity)), value_(value), where_(std::move(where)) {}

  const std::string& quantity() const { return quantity_; }
  double value() const { return value_; }
  const std::string& where() const { return where_; }

private:
  std::string quantity_;
  double value_;
  std::string where_;
};

/// Thrown when an operation is asked for a system it does not support.
class UnsupportedSystemError : public std::invalid_argument {
public:
  explicit UnsupportedSystemError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Thrown when the implicit slab solve fails to reach the requested tolerance.
class NonConvergenceError : public std::runtime_error {
public:
  NonConvergenceError(int iterations, double residual_norm, std::string where = {})
      : std::runtime_error("Newton did not converge after " +
                           std::to_string(iterations) +
                           " iterations, residual " + std::to_string(residual_norm) +
                           (where.empty() ? std::string{} : " in " + where)),
        iterations_(iterations), residual_norm_(residual_norm) {}

  int iterations() const { return iterations_; }
  double residual_norm() const { return residual_norm_; }

private:
  int iterations_;
  double residual_norm_;
};

/// Thrown for run configurations outside the supported limits.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace stdg

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace qnoise {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the domain of an operation (non-finite angle,
/// squeeze factor beyond the overflow guard, kappa <= 0 for decomposition).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Raised by config parsing and validation. `field()` is the config path of
/// the offending entry, e.g. "T_src" or "eps_src_channels[1].values".
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class Degeneracy {
  singular_matrix,
  lasing_threshold,
  blind_quadrature,
  singular_covariance,
  expansion_breakdown,
};

const char* to_string(Degeneracy kind) noexcept;

/// A numerical degeneracy at a specific sideband frequency. Never silently
/// replaced by NaN or inf.
class DegeneracyError : public Error {
 public:
  DegeneracyError(Degeneracy kind, double omega, const std::string& message)
      : Error(message), kind_(kind), omega_(omega) {}

  Degeneracy kind() const noexcept { return kind_; }
  /// Sideband angular frequency [rad/s]; 0 when not tied to a frequency.
  double omega() const noexcept { return omega_; }

 private:
  Degeneracy kind_;
  double omega_;
};

}  // namespace qnoise

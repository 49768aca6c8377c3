#pragma once

#include <span>
#include <vector>

namespace qnoise {

/// Closed frequency interval in Hz.
struct Band {
  double f_min_hz = 5.0;
  double f_max_hz = 5000.0;
};

/// A real quantity that is either constant or tabulated against frequency.
/// Tables are interpolated linearly in log-frequency; lookups outside the
/// tabulated range throw instead of extrapolating.
class Tabulated {
 public:
  Tabulated() = default;
  /// Constant value at every frequency.
  Tabulated(double value);  // NOLINT(google-explicit-constructor)
  /// Throws DomainError unless freqs_hz is strictly increasing, positive, and
  /// the same length (>= 2) as values.
  Tabulated(std::vector<double> freqs_hz, std::vector<double> values);

  bool is_constant() const noexcept { return freqs_.empty(); }
  bool covers(const Band& band) const noexcept;

  double at_hz(double f_hz) const;
  double at_omega(double omega) const;

  /// Constant value, or the table's value column.
  std::span<const double> values() const noexcept;
  std::span<const double> freqs_hz() const noexcept { return freqs_; }

  double min_value() const;
  double max_value() const;

 private:
  double constant_ = 0.0;
  std::vector<double> freqs_;
  std::vector<double> log_freqs_;
  std::vector<double> values_;
};

/// Log-spaced frequency grid with exact endpoints. Requires points >= 2 and
/// 0 < f_min < f_max.
std::vector<double> log_spaced_hz(const Band& band, std::size_t points);

}  // namespace qnoise

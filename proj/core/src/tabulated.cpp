#include "qnoise/tabulated.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qnoise/constants.hpp"
#include "qnoise/errors.hpp"

namespace qnoise {

Tabulated::Tabulated(double value) : constant_(value) {
  if (!std::isfinite(value)) throw DomainError("tabulated constant must be finite");
}

Tabulated::Tabulated(std::vector<double> freqs_hz, std::vector<double> values)
    : freqs_(std::move(freqs_hz)), values_(std::move(values)) {
  if (freqs_.size() != values_.size()) {
    throw DomainError("table frequency and value columns differ in length");
  }
  if (freqs_.size() < 2) throw DomainError("table needs at least two rows");
  for (std::size_t i = 0; i < freqs_.size(); ++i) {
    if (!std::isfinite(freqs_[i]) || freqs_[i] <= 0.0) {
      throw DomainError("table frequencies must be positive and finite");
    }
    if (!std::isfinite(values_[i])) throw DomainError("table values must be finite");
    if (i > 0 && freqs_[i] <= freqs_[i - 1]) {
      throw DomainError("table frequencies must be strictly increasing");
    }
  }
  log_freqs_.reserve(freqs_.size());
  for (double f : freqs_) log_freqs_.push_back(std::log(f));
}

bool Tabulated::covers(const Band& band) const noexcept {
  return is_constant() || (freqs_.front() <= band.f_min_hz && band.f_max_hz <= freqs_.back());
}

double Tabulated::at_hz(double f_hz) const {
  if (is_constant()) return constant_;
  if (!(f_hz >= freqs_.front() && f_hz <= freqs_.back())) {
    throw DomainError("frequency " + std::to_string(f_hz) + " Hz outside tabulated range [" +
                      std::to_string(freqs_.front()) + ", " + std::to_string(freqs_.back()) +
                      "] Hz");
  }
  const auto upper = std::upper_bound(freqs_.begin(), freqs_.end(), f_hz);
  if (upper == freqs_.end()) return values_.back();
  const auto i = static_cast<std::size_t>(upper - freqs_.begin());
  const double x = std::log(f_hz);
  const double t = (x - log_freqs_[i - 1]) / (log_freqs_[i] - log_freqs_[i - 1]);
  return values_[i - 1] + t * (values_[i] - values_[i - 1]);
}

double Tabulated::at_omega(double omega) const { return at_hz(omega / constants::two_pi); }

std::span<const double> Tabulated::values() const noexcept {
  if (is_constant()) return {&constant_, 1};
  return values_;
}

double Tabulated::min_value() const {
  const auto v = values();
  return *std::min_element(v.begin(), v.end());
}

double Tabulated::max_value() const {
  const auto v = values();
  return *std::max_element(v.begin(), v.end());
}

std::vector<double> log_spaced_hz(const Band& band, std::size_t points) {
  if (points < 2) throw DomainError("frequency grid needs at least two points");
  if (!(band.f_min_hz > 0.0) || !(band.f_max_hz > band.f_min_hz) || !std::isfinite(band.f_max_hz)) {
    throw DomainError("frequency band must satisfy 0 < f_min < f_max");
  }
  std::vector<double> f(points);
  const double lo = std::log(band.f_min_hz);
  const double hi = std::log(band.f_max_hz);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    f[i] = std::exp(lo + step * static_cast<double>(i));
  }
  f.front() = band.f_min_hz;
  f.back() = band.f_max_hz;
  return f;
}

}  // namespace qnoise

#include "qnoise/fdt.hpp"

#include <cmath>

#include "qnoise/constants.hpp"
#include "qnoise/errors.hpp"

namespace qnoise::fdt {

namespace {

using cplx = std::complex<double>;

// hbar [(gamma - i w)^2 + omega_cav^2], with omega_cav^2 - w^2 formed as
// (omega_cav - w)(omega_cav + w) to keep the small detuning exact.
cplx denominator(const CavityMode& mode, OpticalFrequency w) {
  const double detuning = (mode.omega_cav - w.carrier) - w.offset;
  const double sum = mode.omega_cav + w.value();
  const double g = mode.gamma_eps;
  const double re = g * g + detuning * sum;
  const double im = -2.0 * g * w.value();
  return constants::hbar * cplx(re, im);
}

}  // namespace

bool CavityMode::approximation_valid() const noexcept {
  return gamma_eps > 0.0 && omega_cav / gamma_eps >= 1e3;
}

CavityMode arm_mode(const IfoConfig& cfg) {
  return {cfg.omega0, constants::c * cfg.eps_arm / (4.0 * cfg.arm_length)};
}

Susceptibility chi_22(const CavityMode& mode, OpticalFrequency w) {
  return {mode.omega_cav / denominator(mode, w)};
}

Susceptibility chi_21(const CavityMode& mode, OpticalFrequency w) {
  return {cplx(-mode.gamma_eps, w.value()) / denominator(mode, w)};
}

double fdt_spectrum(Susceptibility chi) { return 2.0 * constants::hbar * chi.value.imag(); }

double gw_coupling(double power, double omega0, double arm_length) {
  if (power < 0.0 || !(omega0 > 0.0) || !(arm_length > 0.0)) {
    throw DomainError("gw_coupling needs P >= 0, omega0 > 0, L > 0");
  }
  return 2.0 * std::sqrt(power * omega0 / (constants::hbar * arm_length * constants::c));
}

FloorEstimate loss_floor_fdt(const IfoConfig& cfg, double omega) {
  if (!(omega > 0.0)) throw DomainError("sideband frequency must be positive");
  const CavityMode mode = arm_mode(cfg);
  if (mode.gamma_eps == 0.0) return {0.0, true};
  const OpticalFrequency w{cfg.omega0, omega};
  const auto c22 = chi_22(mode, w);
  const auto c21 = chi_21(mode, w);
  const double g = gw_coupling(cfg.arm_power, cfg.omega0, cfg.arm_length);
  const double l = cfg.arm_length;
  const double value = 2.0 * c22.value.imag() / (constants::hbar * g * g * l * l * std::norm(c21.value));
  return {value, mode.approximation_valid()};
}

std::pair<Susceptibility, Susceptibility> coupled_susceptibilities(Susceptibility chi22,
                                                                   Susceptibility chi21,
                                                                   std::complex<double> chi_yy) {
  const cplx denom = 1.0 - chi22.value * chi_yy;
  if (denom == cplx(0.0, 0.0)) {
    throw DomainError("coupling denominator 1 - chi_22 chi_yy vanishes");
  }
  return {Susceptibility{chi22.value / denom}, Susceptibility{chi21.value / denom}};
}

double dissipation_ratio(Susceptibility chi22, Susceptibility chi21) {
  return chi22.value.imag() / std::norm(chi21.value);
}

}  // namespace qnoise::fdt

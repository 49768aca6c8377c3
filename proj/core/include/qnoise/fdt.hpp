#pragma once

// Arm-loss sensitivity floor from the zero-temperature fluctuation-dissipation
// theorem applied to a single damped cavity mode. Independent of the
// transfer-matrix pipeline in ifo_model.hpp.

#include <complex>
#include <utility>

#include "qnoise/ifo_config.hpp"

namespace qnoise::fdt {

/// An optical angular frequency carrier + offset [rad/s]. Kept split so that
/// detunings of a few rad/s survive next to a 1e15 rad/s carrier.
struct OpticalFrequency {
  double carrier = 0.0;
  double offset = 0.0;

  double value() const noexcept { return carrier + offset; }
};

struct CavityMode {
  double omega_cav = 0.0;  // resonance [rad/s]
  double gamma_eps = 0.0;  // loss damping rate [rad/s]

  /// The single-mode reduction assumes omega_cav >> gamma_eps; false when the
  /// ratio drops below 1e3.
  bool approximation_valid() const noexcept;
};

/// Arm cavity mode resonant with the carrier, damped by c eps_arm / (4L).
CavityMode arm_mode(const IfoConfig& cfg);

struct Susceptibility {
  std::complex<double> value;
};

/// chi_{A2 A2} = omega_cav / (hbar [(gamma - i w)^2 + omega_cav^2]).
Susceptibility chi_22(const CavityMode& mode, OpticalFrequency w);

/// chi_{A2 A1} = (i w - gamma) / (hbar [(gamma - i w)^2 + omega_cav^2]).
Susceptibility chi_21(const CavityMode& mode, OpticalFrequency w);

/// Zero-temperature FDT: S_xx = 2 hbar Im chi_xx.
double fdt_spectrum(Susceptibility chi);

/// Strain coupling g = 2 sqrt(P omega0 / (hbar L c)).
double gw_coupling(double power, double omega0, double arm_length);

struct FloorEstimate {
  double value = 0.0;
  bool within_validity = true;
};

/// 2 Im chi_22 / (hbar g^2 L^2 |chi_21|^2) at w = omega0 + Omega.
FloorEstimate loss_floor_fdt(const IfoConfig& cfg, double omega);

/// Response after coupling the phase quadrature to a passive degree of freedom
/// with susceptibility chi_yy: chi -> chi / (1 - chi_22 chi_yy). Throws
/// DomainError when the shared denominator vanishes.
std::pair<Susceptibility, Susceptibility> coupled_susceptibilities(Susceptibility chi22,
                                                                   Susceptibility chi21,
                                                                   std::complex<double> chi_yy);

/// Im chi_22 / |chi_21|^2; unchanged by coupling to real chi_yy.
double dissipation_ratio(Susceptibility chi22, Susceptibility chi21);

}  // namespace qnoise::fdt

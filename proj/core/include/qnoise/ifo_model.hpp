#pragma once

// Simplified interferometer: an arm cavity behind an effective signal-recycling
// mirror of transmissivity T_src, with a round-trip rotation/squeeze block,
// internal loss eps_int, and external (readout) loss eps_ext. All propagation
// phases are taken as cancelled except an optional residual phase table.

#include <array>
#include <span>

#include "qnoise/ifo_config.hpp"
#include "qnoise/quadrature.hpp"
#include "qnoise/tabulated.hpp"

namespace qnoise {

/// Arm cavity half-bandwidth c T_itm / (4L) [rad/s].
double arm_bandwidth(const IfoConfig& cfg);

/// Radiation-pressure coupling 16 P omega0 / (M c^2 Omega^2). Rejects Omega <= 0.
double kappa(const IfoConfig& cfg, double omega);

/// Minimum over the band of the summed channel losses. Channels are piecewise
/// linear in log-frequency, so the minimum sits on a table node or band edge.
double effective_src_loss(std::span<const Tabulated> channels, const Band& band);

/// eps_arm + (T_itm / 4)(1 + Omega^2/gamma^2) eps_src.
double effective_internal_loss(const IfoConfig& cfg, double eps_src, double omega);

/// Amplitude of the strain response before the SRC, 2 sqrt(omega0 L^2 P / (hbar c^2)).
double strain_response(const IfoConfig& cfg);

/// The round-trip block e^{i phi_res} R(Theta) S(r, theta) R(Theta) at one
/// frequency, with ponderomotive rotation folded in: R(Theta) S R(phi) R(Theta)
/// equals R(Theta + phi/2) S(r, theta - phi/2) R(Theta + phi/2).
struct RoundTrip {
  double rotation = 0.0;
  SqueezeParams squeeze;
  double residual_phase = 0.0;
  ComplexMat2 matrix = ComplexMat2::identity();
};

struct IoRelation {
  ComplexMat2 m_io;
  ComplexMat2 m_c;
  ComplexVec2 v;
  double internal_coupling = 0.0;  // sqrt(T_src eps_int)
  double external_coupling = 0.0;  // sqrt(eps_ext)
  RoundTrip round_trip;
};

/// Sigma_tot = B B^dagger, B = [M_io S_in | sqrt(T eps_int) M_c | sqrt(eps_ext) I].
/// Columns of B.
using NoiseFactor = std::array<ComplexVec2, 6>;

struct OptimalReadout {
  double s_hh = 0.0;  // 1 / (v^dagger Sigma^-1 v) [1/Hz]
  double zeta = 0.0;  // best real homodyne angle, in [0, pi)
};

class Interferometer {
 public:
  /// Validates the config against the band; throws ConfigError.
  explicit Interferometer(IfoConfig cfg, Band band = {});

  const IfoConfig& config() const noexcept { return cfg_; }
  const Band& band() const noexcept { return band_; }

  double arm_bandwidth() const noexcept { return gamma_; }
  double eps_src() const noexcept { return eps_src_; }
  double kappa(double omega) const;
  double eps_int(double omega) const;

  RoundTrip round_trip(double omega) const;

  /// Throws DegeneracyError(lasing_threshold) when
  /// |det(I - sqrt(R_src) round_trip)| < 1e-14.
  IoRelation io_relation(double omega) const;

  /// Input squeezing at this frequency; with theta_input == "optimal" the
  /// squeezed axis is aligned with M_io^-1 v.
  SqueezeParams input_squeeze(double omega, const IoRelation& io) const;

  NoiseFactor noise_factor(double omega, const IoRelation& io) const;
  ComplexMat2 total_covariance(double omega) const;

  /// (q Sigma q^T) / |q v|^2 with q = (cos zeta, sin zeta). Throws
  /// DegeneracyError(blind_quadrature) when q is orthogonal to v.
  double homodyne_spectrum(double omega, double zeta) const;

  /// Throws DegeneracyError(singular_covariance) when Sigma_tot is
  /// numerically singular.
  OptimalReadout optimal_spectrum(double omega) const;

  /// Optimal readout with eps_arm, eps_src and eps_ext all forced to zero.
  double qcrb_lossless(double omega) const;

  /// Same interferometer with every loss set to zero.
  Interferometer lossless() const;

 private:
  struct Losses {
    double eps_int;
    double eps_ext;
  };

  void check_frequency(double omega) const;
  Losses losses(double omega) const;
  NoiseFactor noise_factor(double omega, const IoRelation& io, const Losses& l) const;
  OptimalReadout optimal(double omega, const Losses& l) const;

  IfoConfig cfg_;
  Band band_;
  double gamma_ = 0.0;
  double eps_src_ = 0.0;
  double beta_ = 0.0;
};

/// Minimum-noise readout for Sigma = B B^dagger and signal v, evaluated through a
/// QR factorisation of B^dagger (never forming or inverting Sigma).
OptimalReadout optimal_readout(std::span<const ComplexVec2> noise_columns, const ComplexVec2& v,
                               double omega = 0.0);

}  // namespace qnoise

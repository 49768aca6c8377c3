#pragma once

// Closed-form sensitivity limits and their leading-order expansions in
// T_src, Theta and r. The expansions use the squeeze angle convention of the
// expanded formulas, which relates to the sqz_matrix angle by
// theta_formula = -2 theta_sqz (see expansion_angle()).

#include "qnoise/ifo_config.hpp"
#include "qnoise/ifo_model.hpp"

namespace qnoise {

/// A value together with whether its approximation holds for the inputs.
/// Out-of-regime use is a warning; the number is still returned.
struct Estimate {
  double value = 0.0;
  bool within_validity = true;
};

enum class LossBranch {
  internal_squeezing,     // alpha = 1
  no_internal_squeezing,  // alpha = 1/4
};

double alpha(LossBranch branch) noexcept;

struct LimitParams {
  double delta = 0.0;   // sqrt(T_src^2 + 16 Theta^2)
  double theta0 = 0.0;  // arccot(4 Theta / T_src), in (0, pi)
  double alpha = 1.0;
};

LimitParams limit_params(double t_src, double rotation, LossBranch branch);

/// Angle in the expanded formulas for a sqz_matrix squeeze angle.
double expansion_angle(double squeeze_angle);
double squeeze_angle_from_expansion(double expansion_angle);

/// Free-mass standard quantum limit 8 hbar / (M Omega^2 L^2).
double sql(double mass, double arm_length, double omega);

/// hbar^2 c^2 / (2 S_PP L^2) from the arm power-fluctuation spectrum S_PP [W^2/Hz].
double qcrb_from_spp(double s_pp, double arm_length);
double spp_from_qcrb(double s_hh, double arm_length);

/// hbar c^2 / (4 L^2 omega0 P), the common prefactor of the loss limits.
double loss_prefactor(const IfoConfig& cfg);

/// First-order loss limit: prefactor times
/// [eps_arm + (1 + Omega^2/gamma^2) T_itm eps_src / 4 + alpha T_src eps_ext].
double loss_limit(const Interferometer& ifo, double omega, LossBranch branch);

/// prefactor * (eps_arm + T_src eps_ext / 4).
double metrology_limit(const IfoConfig& cfg);

/// T_src < 0.05, |Theta| < 0.05, |r| <= delta.
bool expansion_regime(double t_src, double rotation, double r);

/// Leading-order lossless bound with internal squeezing r at expansion angle
/// `theta`. Throws DomainError when the denominator is not positive.
Estimate taylor_qcrb_internal(double t_src, double rotation, double r, double theta,
                              double r_input, double arm_length, double omega0, double power);

/// Leading-order lossless bound without internal squeezing.
Estimate taylor_qcrb_no_internal(double t_src, double rotation, double r_input, double arm_length,
                                 double omega0, double power);

/// prefactor * (eps_int + T_src eps_ext), reached at r = delta/2 with the
/// optimal internal squeeze angle.
Estimate taylor_loss_internal(const Interferometer& ifo, double omega);

/// prefactor * (eps_int + T_src eps_ext / 4), reached at r = 0, Theta = 0.
Estimate taylor_loss_no_internal(const Interferometer& ifo, double omega);

/// sqrt((1 + sin(theta + theta0)) / 4).
double signal_response_ratio(double theta, double theta0);

}  // namespace qnoise

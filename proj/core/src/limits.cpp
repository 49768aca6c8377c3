#include "qnoise/limits.hpp"

#include <algorithm>
#include <cmath>

#include "qnoise/constants.hpp"
#include "qnoise/errors.hpp"
#include "qnoise/quadrature.hpp"

namespace qnoise {

namespace {

constexpr double regime_bound = 0.05;

double c2() { return constants::c * constants::c; }

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

double delta_of(double t_src, double rotation) {
  return std::sqrt(t_src * t_src + 16.0 * rotation * rotation);
}

}  // namespace

double alpha(LossBranch branch) noexcept {
  return branch == LossBranch::internal_squeezing ? 1.0 : 0.25;
}

LimitParams limit_params(double t_src, double rotation, LossBranch branch) {
  require_positive(t_src, "T_src");
  return {delta_of(t_src, rotation), arccot(4.0 * rotation / t_src), alpha(branch)};
}

double expansion_angle(double squeeze_angle) { return -2.0 * squeeze_angle; }

double squeeze_angle_from_expansion(double expansion_angle) { return -0.5 * expansion_angle; }

double sql(double mass, double arm_length, double omega) {
  require_positive(mass, "mass");
  require_positive(arm_length, "arm length");
  require_positive(omega, "omega");
  return 8.0 * constants::hbar / (mass * omega * omega * arm_length * arm_length);
}

double qcrb_from_spp(double s_pp, double arm_length) {
  require_positive(s_pp, "S_PP");
  require_positive(arm_length, "arm length");
  const double h = constants::hbar;
  return h * h * c2() / (2.0 * s_pp * arm_length * arm_length);
}

double spp_from_qcrb(double s_hh, double arm_length) {
  require_positive(s_hh, "S_hh");
  require_positive(arm_length, "arm length");
  const double h = constants::hbar;
  return h * h * c2() / (2.0 * s_hh * arm_length * arm_length);
}

double loss_prefactor(const IfoConfig& cfg) {
  return constants::hbar * c2() /
         (4.0 * cfg.arm_length * cfg.arm_length * cfg.omega0 * cfg.arm_power);
}

double loss_limit(const Interferometer& ifo, double omega, LossBranch branch) {
  const auto& cfg = ifo.config();
  if (!(omega >= 0.0)) throw DomainError("omega must be non-negative");
  const double x = omega / ifo.arm_bandwidth();
  const double bracket = cfg.eps_arm + (1.0 + x * x) * cfg.t_itm * ifo.eps_src() / 4.0 +
                         alpha(branch) * cfg.t_src * cfg.eps_ext;
  return loss_prefactor(cfg) * bracket;
}

double metrology_limit(const IfoConfig& cfg) {
  return loss_prefactor(cfg) * (cfg.eps_arm + cfg.t_src * cfg.eps_ext / 4.0);
}

bool expansion_regime(double t_src, double rotation, double r) {
  return t_src < regime_bound && std::abs(rotation) < regime_bound &&
         std::abs(r) <= delta_of(t_src, rotation);
}

Estimate taylor_qcrb_internal(double t_src, double rotation, double r, double theta,
                              double r_input, double arm_length, double omega0, double power) {
  require_positive(t_src, "T_src");
  const auto p = limit_params(t_src, rotation, LossBranch::internal_squeezing);
  const double d2 = p.delta * p.delta;
  const double denom = d2 + 4.0 * r * r + 4.0 * p.delta * r * std::sin(theta + p.theta0);
  if (!(denom > 0.0)) {
    throw DomainError("expansion denominator is not positive; outside validity");
  }
  const double num = (d2 - 4.0 * r * r);
  const double pre = constants::hbar * c2() * std::exp(-2.0 * r_input) /
                     (16.0 * arm_length * arm_length * omega0 * power * t_src);
  return {pre * num * num / denom, expansion_regime(t_src, rotation, r)};
}

Estimate taylor_qcrb_no_internal(double t_src, double rotation, double r_input, double arm_length,
                                 double omega0, double power) {
  require_positive(t_src, "T_src");
  const double d = delta_of(t_src, rotation);
  const double value = constants::hbar * c2() * d * d * std::exp(-2.0 * r_input) /
                       (16.0 * t_src * arm_length * arm_length * omega0 * power);
  return {value, expansion_regime(t_src, rotation, 0.0)};
}

Estimate taylor_loss_internal(const Interferometer& ifo, double omega) {
  const auto& cfg = ifo.config();
  const double value = loss_prefactor(cfg) * (ifo.eps_int(omega) + cfg.t_src * cfg.eps_ext);
  return {value, expansion_regime(cfg.t_src, cfg.rotation.at_omega(omega), 0.0)};
}

Estimate taylor_loss_no_internal(const Interferometer& ifo, double omega) {
  const auto& cfg = ifo.config();
  const double value =
      loss_prefactor(cfg) * (ifo.eps_int(omega) + cfg.t_src * cfg.eps_ext / 4.0);
  return {value, expansion_regime(cfg.t_src, cfg.rotation.at_omega(omega), 0.0)};
}

double signal_response_ratio(double theta, double theta0) {
  if (!std::isfinite(theta) || !std::isfinite(theta0)) {
    throw DomainError("angles must be finite");
  }
  return std::sqrt(std::max(0.0, 1.0 + std::sin(theta + theta0)) / 4.0);
}

}  // namespace qnoise

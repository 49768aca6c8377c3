#include "qnoise/ifo_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>
#include <string>
#include <vector>

#include "qnoise/constants.hpp"
#include "qnoise/errors.hpp"

namespace qnoise {

namespace {

constexpr double lasing_det_floor = 1e-14;
constexpr double eps = std::numeric_limits<double>::epsilon();

void require_positive_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("sideband frequency must be positive and finite");
  }
}

// Unit eigenvector of the larger eigenvalue of [[a, b], [b, d]].
std::array<double, 2> top_eigenvector(double a, double b, double d) {
  const double half_gap = 0.5 * (a - d);
  const double lambda = 0.5 * (a + d) + std::hypot(half_gap, b);
  double x1 = lambda - d, y1 = b;
  double x2 = b, y2 = lambda - a;
  double n1 = std::hypot(x1, y1), n2 = std::hypot(x2, y2);
  if (n1 == 0.0 && n2 == 0.0) return {1.0, 0.0};
  if (n1 >= n2) return {x1 / n1, y1 / n1};
  return {x2 / n2, y2 / n2};
}

template <class T>
double norm_sq(const std::vector<T>& x) {
  double s = 0.0;
  for (const auto& e : x) s += std::norm(e);
  return s;
}

// Two-column QR of an m x 2 matrix given as columns; classical Gram-Schmidt
// with one reorthogonalisation pass. Returns R = [[r11, r12], [0, r22]].
template <class T>
struct TwoColumnR {
  double r11;
  T r12;
  double r22;
};

template <class T>
TwoColumnR<T> two_column_r(std::vector<T> c1, std::vector<T> c2) {
  const double r11 = std::sqrt(norm_sq(c1));
  if (r11 == 0.0) return {0.0, T{}, 0.0};
  for (auto& e : c1) e /= r11;
  T r12{};
  for (int pass = 0; pass < 2; ++pass) {
    T proj{};
    for (std::size_t i = 0; i < c1.size(); ++i) {
      if constexpr (std::is_same_v<T, Complex>) {
        proj += std::conj(c1[i]) * c2[i];
      } else {
        proj += c1[i] * c2[i];
      }
    }
    for (std::size_t i = 0; i < c1.size(); ++i) c2[i] -= c1[i] * proj;
    r12 += proj;
  }
  return {r11, r12, std::sqrt(norm_sq(c2))};
}

}  // namespace

double arm_bandwidth(const IfoConfig& cfg) {
  return constants::c * cfg.t_itm / (4.0 * cfg.arm_length);
}

double kappa(const IfoConfig& cfg, double omega) {
  require_positive_omega(omega);
  const double c2 = constants::c * constants::c;
  return 16.0 * cfg.arm_power * cfg.omega0 / (cfg.mirror_mass * c2 * omega * omega);
}

double effective_src_loss(std::span<const Tabulated> channels, const Band& band) {
  if (channels.empty()) return 0.0;
  if (!(band.f_min_hz > 0.0) || !(band.f_max_hz >= band.f_min_hz)) {
    throw DomainError("invalid band");
  }
  std::vector<double> nodes{band.f_min_hz, band.f_max_hz};
  for (const auto& ch : channels) {
    if (!ch.covers(band)) throw DomainError("SRC loss channel does not cover the band");
    for (double f : ch.freqs_hz()) {
      if (f > band.f_min_hz && f < band.f_max_hz) nodes.push_back(f);
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (double f : nodes) {
    double total = 0.0;
    for (const auto& ch : channels) total += ch.at_hz(f);
    best = std::min(best, total);
  }
  return best;
}

double effective_internal_loss(const IfoConfig& cfg, double eps_src, double omega) {
  if (!(omega >= 0.0)) throw DomainError("sideband frequency must be non-negative");
  const double x = omega / arm_bandwidth(cfg);
  return cfg.eps_arm + 0.25 * cfg.t_itm * (1.0 + x * x) * eps_src;
}

double strain_response(const IfoConfig& cfg) {
  const double c2 = constants::c * constants::c;
  return 2.0 * std::sqrt(cfg.omega0 * cfg.arm_length * cfg.arm_length * cfg.arm_power /
                         (constants::hbar * c2));
}

Interferometer::Interferometer(IfoConfig cfg, Band band) : cfg_(std::move(cfg)), band_(band) {
  validate(cfg_, band_);
  gamma_ = qnoise::arm_bandwidth(cfg_);
  eps_src_ = effective_src_loss(cfg_.eps_src_channels, band_);
  if (!(eps_src_ < 1.0)) {
    throw ConfigError("eps_src_channels", "summed SRC loss must stay below 1");
  }
  beta_ = strain_response(cfg_);
}

void Interferometer::check_frequency(double omega) const {
  require_positive_omega(omega);
  const double f = omega / constants::two_pi;
  const double slack = 1e-12;
  if (f < band_.f_min_hz * (1.0 - slack) || f > band_.f_max_hz * (1.0 + slack)) {
    throw DomainError("frequency " + std::to_string(f) + " Hz outside the analysis band");
  }
}

double Interferometer::kappa(double omega) const { return qnoise::kappa(cfg_, omega); }

double Interferometer::eps_int(double omega) const {
  return effective_internal_loss(cfg_, eps_src_, omega);
}

Interferometer::Losses Interferometer::losses(double omega) const {
  return {eps_int(omega), cfg_.eps_ext};
}

RoundTrip Interferometer::round_trip(double omega) const {
  check_frequency(omega);
  RoundTrip rt;
  rt.rotation = cfg_.rotation.at_omega(omega);
  rt.residual_phase = cfg_.residual_phase.at_omega(omega);
  switch (cfg_.internal_sqz.mode) {
    case InternalSqueezingMode::none:
      break;
    case InternalSqueezingMode::fixed:
      rt.squeeze = SqueezeParams(cfg_.internal_sqz.r.at_omega(omega),
                                 cfg_.internal_sqz.theta.at_omega(omega));
      break;
    case InternalSqueezingMode::ponderomotive: {
      const double k = kappa(omega);
      if (k > 0.0) {
        const auto d = ponderomotive_decompose(k);
        rt.rotation += 0.5 * d.phi;
        rt.squeeze = SqueezeParams(d.squeeze.r(), d.squeeze.theta() - 0.5 * d.phi);
      }
      break;
    }
  }
  const ComplexMat2 rot = rot_matrix(rt.rotation);
  rt.matrix = rot * sqz_matrix(rt.squeeze) * rot;
  if (rt.residual_phase != 0.0) {
    rt.matrix = std::polar(1.0, rt.residual_phase) * rt.matrix;
  }
  return rt;
}

IoRelation Interferometer::io_relation(double omega) const {
  IoRelation io;
  io.round_trip = round_trip(omega);
  const double t = cfg_.t_src;
  const double sqrt_r = std::sqrt(1.0 - t);
  const ComplexMat2 loop = ComplexMat2::identity() - sqrt_r * io.round_trip.matrix;
  if (std::abs(loop.det()) < lasing_det_floor) {
    throw DegeneracyError(Degeneracy::lasing_threshold, omega,
                          "round-trip gain reaches unity (lasing threshold) at f = " +
                              std::to_string(omega / constants::two_pi) + " Hz");
  }
  io.m_c = loop.inverse();
  io.m_io = -sqrt_r * ComplexMat2::identity() + t * io.m_c * io.round_trip.matrix;
  io.v = std::sqrt(t) * (io.m_c * ComplexVec2{0.0, beta_});
  const Losses l = losses(omega);
  io.internal_coupling = std::sqrt(t * l.eps_int);
  io.external_coupling = std::sqrt(l.eps_ext);
  return io;
}

SqueezeParams Interferometer::input_squeeze(double omega, const IoRelation& io) const {
  if (cfg_.theta_input) return SqueezeParams(cfg_.r_input, *cfg_.theta_input);
  // M_io^-1 v is proportional to (round_trip - sqrt(R) I)^-1 (0, 1)'.
  const ComplexMat2 shifted =
      io.round_trip.matrix - std::sqrt(1.0 - cfg_.t_src) * ComplexMat2::identity();
  const Complex d = shifted.det();
  if (d == Complex{0.0, 0.0}) {
    throw DegeneracyError(Degeneracy::singular_matrix, omega, "input-output matrix is singular");
  }
  // adj(shifted) * (0, 1)'
  const ComplexVec2 w{-shifted.m12 / d, shifted.m11 / d};
  const double a = std::norm(w.a1);
  const double b = std::real(w.a1 * std::conj(w.a2));
  const double c = std::norm(w.a2);
  const auto e = top_eigenvector(a, b, c);
  // Squeezed axis of S(r, theta) S^T is (-sin theta, cos theta).
  return SqueezeParams(cfg_.r_input, std::atan2(-e[0], e[1]));
}

NoiseFactor Interferometer::noise_factor(double omega, const IoRelation& io,
                                         const Losses& l) const {
  const ComplexMat2 a = io.m_io * sqz_matrix(input_squeeze(omega, io));
  const double gi = std::sqrt(cfg_.t_src * l.eps_int);
  const double ge = std::sqrt(l.eps_ext);
  return {ComplexVec2{a.m11, a.m21},
          ComplexVec2{a.m12, a.m22},
          Complex(gi) * ComplexVec2{io.m_c.m11, io.m_c.m21},
          Complex(gi) * ComplexVec2{io.m_c.m12, io.m_c.m22},
          ComplexVec2{ge, 0.0},
          ComplexVec2{0.0, ge}};
}

NoiseFactor Interferometer::noise_factor(double omega, const IoRelation& io) const {
  return noise_factor(omega, io, losses(omega));
}

ComplexMat2 Interferometer::total_covariance(double omega) const {
  const IoRelation io = io_relation(omega);
  const NoiseFactor b = noise_factor(omega, io);
  ComplexMat2 s = ComplexMat2::zero();
  for (const auto& col : b) {
    s.m11 += std::norm(col.a1);
    s.m12 += col.a1 * std::conj(col.a2);
    s.m21 += col.a2 * std::conj(col.a1);
    s.m22 += std::norm(col.a2);
  }
  return s;
}

double Interferometer::homodyne_spectrum(double omega, double zeta) const {
  if (!std::isfinite(zeta)) throw DomainError("homodyne angle must be finite");
  const IoRelation io = io_relation(omega);
  const NoiseFactor b = noise_factor(omega, io);
  const double c = std::cos(zeta);
  const double s = std::sin(zeta);
  double noise = 0.0;
  for (const auto& col : b) noise += std::norm(c * col.a1 + s * col.a2);
  const double signal = std::norm(c * io.v.a1 + s * io.v.a2);
  if (signal <= 1e-26 * io.v.norm_squared()) {
    throw DegeneracyError(Degeneracy::blind_quadrature, omega,
                          "homodyne angle is orthogonal to the signal (blind quadrature)");
  }
  return noise / signal;
}

OptimalReadout Interferometer::optimal(double omega, const Losses& l) const {
  const IoRelation io = io_relation(omega);
  const NoiseFactor b = noise_factor(omega, io, l);
  return optimal_readout(b, io.v, omega);
}

OptimalReadout Interferometer::optimal_spectrum(double omega) const {
  return optimal(omega, losses(omega));
}

double Interferometer::qcrb_lossless(double omega) const {
  return optimal(omega, Losses{0.0, 0.0}).s_hh;
}

Interferometer Interferometer::lossless() const {
  IfoConfig c = cfg_;
  c.eps_arm = 0.0;
  c.eps_ext = 0.0;
  c.eps_src_channels = {Tabulated(0.0)};
  return Interferometer(std::move(c), band_);
}

OptimalReadout optimal_readout(std::span<const ComplexVec2> noise_columns, const ComplexVec2& v,
                               double omega) {
  // Sigma = B B^dagger = R^dagger R with B^dagger = Q R.
  const std::size_t m = noise_columns.size();
  std::vector<Complex> c1(m), c2(m);
  for (std::size_t k = 0; k < m; ++k) {
    c1[k] = std::conj(noise_columns[k].a1);
    c2[k] = std::conj(noise_columns[k].a2);
  }
  const auto r = two_column_r(c1, c2);
  if (!(r.r11 > 0.0) || !(r.r22 > 64.0 * eps * r.r11)) {
    throw DegeneracyError(Degeneracy::singular_covariance, omega,
                          "total covariance matrix is numerically singular");
  }
  // R^dagger y = v
  const Complex y1 = v.a1 / r.r11;
  const Complex y2 = (v.a2 - std::conj(r.r12) * y1) / r.r22;
  const double info = std::norm(y1) + std::norm(y2);
  if (!(info > 0.0)) {
    throw DegeneracyError(Degeneracy::blind_quadrature, omega, "signal vector vanishes");
  }

  // Best real quadrature: maximise q^T Re(v v^dagger) q / q^T Re(Sigma) q.
  // Re(Sigma) = C C^T with C = [Re B, Im B].
  std::vector<double> d1(2 * m), d2(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    d1[k] = noise_columns[k].a1.real();
    d1[m + k] = noise_columns[k].a1.imag();
    d2[k] = noise_columns[k].a2.real();
    d2[m + k] = noise_columns[k].a2.imag();
  }
  const auto rr = two_column_r(d1, d2);
  // K = W^T Rr^-1, W = [Re v, Im v]; Rr^-1 = [[1/r11, -r12/(r11 r22)], [0, 1/r22]].
  const double i11 = 1.0 / rr.r11;
  const double i12 = -rr.r12 / (rr.r11 * rr.r22);
  const double i22 = 1.0 / rr.r22;
  const double w[2][2] = {{v.a1.real(), v.a2.real()}, {v.a1.imag(), v.a2.imag()}};
  double k[2][2];
  for (int row = 0; row < 2; ++row) {
    k[row][0] = w[row][0] * i11;
    k[row][1] = w[row][0] * i12 + w[row][1] * i22;
  }
  const double g11 = k[0][0] * k[0][0] + k[1][0] * k[1][0];
  const double g12 = k[0][0] * k[0][1] + k[1][0] * k[1][1];
  const double g22 = k[0][1] * k[0][1] + k[1][1] * k[1][1];
  const auto p = top_eigenvector(g11, g12, g22);
  const double q1 = i11 * p[0] + i12 * p[1];
  const double q2 = i22 * p[1];
  double zeta = std::atan2(q2, q1);
  if (zeta < 0.0) zeta += constants::pi;
  if (zeta >= constants::pi) zeta -= constants::pi;
  return {1.0 / info, zeta};
}

}  // namespace qnoise

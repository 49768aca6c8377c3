#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qnoise/constants.hpp"
#include "qnoise/errors.hpp"
#include "qnoise/ifo_model.hpp"
#include "test_helpers.hpp"

namespace qnoise {
namespace {

using constants::pi;
using constants::two_pi;
using test::rel_diff;

IfoConfig lossless(IfoConfig cfg = default_config()) {
  cfg.eps_arm = 0.0;
  cfg.eps_src_channels.clear();
  cfg.eps_ext = 0.0;
  return cfg;
}

TEST(ArmBandwidth, Examples) {
  IfoConfig cfg = default_config();
  EXPECT_NEAR(arm_bandwidth(cfg), 262.3, 0.05);
  EXPECT_NEAR(arm_bandwidth(cfg) / two_pi, 41.7, 0.05);
  cfg.arm_length *= 2;
  EXPECT_NEAR(arm_bandwidth(cfg), 262.3 / 2, 0.05);
  cfg.t_itm = 1e-12;
  EXPECT_LT(arm_bandwidth(cfg), 1e-7);
}

TEST(Kappa, Examples) {
  IfoConfig cfg = default_config();
  const double w = two_pi * 100.0;
  EXPECT_NEAR(kappa(cfg, w), 0.0159, 1e-4);
  EXPECT_NEAR(kappa(cfg, 2 * w), kappa(cfg, w) / 4, 1e-16);
  cfg.arm_power = 0.0;
  EXPECT_EQ(kappa(cfg, w), 0.0);
  EXPECT_THROW(kappa(cfg, 0.0), DomainError);
}

TEST(EffectiveSrcLoss, Examples) {
  const Band band;
  const std::vector<Tabulated> one{Tabulated(1e-3)};
  EXPECT_EQ(effective_src_loss(one, band), 1e-3);
  const std::vector<Tabulated> two{Tabulated(4e-4), Tabulated(6e-4)};
  EXPECT_NEAR(effective_src_loss(two, band), 1e-3, 1e-18);
  const std::vector<Tabulated> rising{Tabulated({5.0, 5000.0}, {1e-4, 1e-3})};
  EXPECT_NEAR(effective_src_loss(rising, band), 1e-4, 1e-18);
  EXPECT_EQ(effective_src_loss({}, band), 0.0);
}

TEST(EffectiveSrcLoss, MatchesDenseGridMinimum) {
  const std::vector<Tabulated> ch{Tabulated({1.0, 50.0, 300.0, 10000.0}, {5e-4, 1e-4, 3e-4, 2e-4}),
                                  Tabulated({1.0, 100.0, 10000.0}, {1e-4, 4e-4, 1e-5})};
  const Band band{5.0, 5000.0};
  double brute = INFINITY;
  for (double f : log_spaced_hz(band, 200001)) brute = std::min(brute, ch[0].at_hz(f) + ch[1].at_hz(f));
  const double exact = effective_src_loss(ch, band);
  EXPECT_LE(exact, brute);
  EXPECT_NEAR(exact, brute, 1e-9);
}

TEST(EffectiveInternalLoss, Examples) {
  const IfoConfig cfg = default_config();
  const double g = arm_bandwidth(cfg);
  EXPECT_NEAR(effective_internal_loss(cfg, 1e-3, 0.0), 1.035e-4, 1e-16);
  const double src0 = effective_internal_loss(cfg, 1e-3, 0.0) - cfg.eps_arm;
  const double srcg = effective_internal_loss(cfg, 1e-3, g) - cfg.eps_arm;
  EXPECT_NEAR(srcg / src0, 2.0, 1e-12);
  EXPECT_EQ(effective_internal_loss(cfg, 0.0, 1234.0), cfg.eps_arm);
}

TEST(IoRelation, TransparentSrm) {
  IfoConfig cfg = lossless();
  cfg.t_src = 1.0 - 1e-16;  // the config invariant is T_src < 1
  const Interferometer ifo(cfg);
  const auto io = ifo.io_relation(two_pi * 100.0);
  EXPECT_LT(max_abs_diff(io.m_io, ComplexMat2::identity()), 1e-7);
  const double beta = strain_response(cfg);
  EXPECT_LT(std::abs(io.v.a1), 1e-12 * beta);
  EXPECT_NEAR(std::abs(io.v.a2) / beta, 1.0, 1e-7);
}

TEST(IoRelation, GeometricSeriesOracle) {
  const Interferometer ifo(lossless());
  const auto io = ifo.io_relation(two_pi * 100.0);
  const double rho = std::sqrt(0.86);
  const double m = -rho + 0.14 / (1.0 - rho);
  EXPECT_LT(max_abs_diff(io.m_io, ComplexMat2::diagonal(m, m)), 1e-12);
  EXPECT_NEAR(m, 1.0, 1e-12);  // unitary: |m| = 1 when nothing is lost
}

TEST(IoRelation, UnitaryWhenLossless) {
  IfoConfig cfg = lossless();
  cfg.rotation = 0.01;
  cfg.residual_phase = 0.3;
  const Interferometer ifo(cfg);
  for (double f : {5.0, 50.0, 500.0, 5000.0}) {
    const auto m = ifo.io_relation(two_pi * f).m_io;
    EXPECT_LT(max_abs_diff(m * m.adjoint(), ComplexMat2::identity()), 1e-10) << f;
    EXPECT_LT(max_abs_diff(ifo.total_covariance(two_pi * f), ComplexMat2::identity()), 1e-10);
  }
}

TEST(IoRelation, HalfSignalAtVanishingBound) {
  IfoConfig cfg = lossless();
  cfg.t_src = 1e-3;
  const double w = two_pi * 100.0;
  const double r = cfg.t_src / 2;  // delta / 2 with Theta = 0
  IfoConfig sq = cfg;
  sq.internal_sqz.mode = InternalSqueezingMode::fixed;
  sq.internal_sqz.r = r;
  sq.internal_sqz.theta = 0.0;
  const double v0 = Interferometer(cfg).io_relation(w).v.a2.real();
  const auto v = Interferometer(sq).io_relation(w).v;
  // The signal is confined to one quadrature either way; compare amplitudes there.
  EXPECT_NEAR(std::abs(v.a1), 0.0, 1e-9 * std::abs(v0));
  EXPECT_NEAR(std::abs(v.a2) / std::abs(v0), 0.5, 2e-3);
}

TEST(IoRelation, LasingThreshold) {
  IfoConfig cfg = lossless();
  cfg.t_src = 1e-3;
  cfg.internal_sqz.mode = InternalSqueezingMode::fixed;
  cfg.internal_sqz.r = -0.5 * std::log(1.0 - cfg.t_src);  // e^{-r} sqrt(R) = 1: gain balances loss
  cfg.internal_sqz.theta = 0.0;
  const Interferometer ifo(cfg);
  try {
    (void)ifo.io_relation(two_pi * 100.0);
    FAIL() << "expected lasing threshold";
  } catch (const DegeneracyError& e) {
    EXPECT_EQ(e.kind(), Degeneracy::lasing_threshold);
    EXPECT_NEAR(e.omega(), two_pi * 100.0, 1e-9);
  }
}

TEST(Covariance, DarkReadoutDominatesIdentity) {
  IfoConfig cfg = default_config();
  cfg.eps_ext = 1.0 - 1e-12;
  const Interferometer ifo(cfg);
  const ComplexMat2 s = ifo.total_covariance(two_pi * 30.0);
  const ComplexMat2 d = s - ComplexMat2::identity();
  // 2x2 Hermitian PSD: non-negative trace and determinant
  EXPECT_GE(d.trace().real(), -1e-12);
  EXPECT_GE(d.det().real(), -1e-12);
}

TEST(Covariance, MatchesClosedFormAtVacuumInput) {
  const IfoConfig cfg = default_config();
  const Interferometer ifo(cfg);
  const double w = two_pi * 80.0;
  const auto io = ifo.io_relation(w);
  const double t = cfg.t_src;
  const double eps_int = ifo.eps_int(w);
  const ComplexMat2 expect = io.m_io * io.m_io.adjoint() +
                             Complex(t * eps_int) * (io.m_c * io.m_c.adjoint()) +
                             Complex(cfg.eps_ext) * ComplexMat2::identity();
  EXPECT_LT(max_abs_diff(ifo.total_covariance(w), expect), 1e-12);
}

TEST(Homodyne, ShotNoiseWithTransparentSrm) {
  IfoConfig cfg = lossless();
  cfg.t_src = 1.0 - 1e-16;
  const Interferometer ifo(cfg);
  const double beta = strain_response(cfg);
  EXPECT_NEAR(ifo.homodyne_spectrum(two_pi * 100.0, pi / 2) * beta * beta, 1.0, 1e-7);
}

TEST(Homodyne, BlindQuadrature) {
  const Interferometer ifo(lossless());
  try {
    (void)ifo.homodyne_spectrum(two_pi * 100.0, 0.0);
    FAIL() << "amplitude quadrature carries no signal in a tuned interferometer";
  } catch (const DegeneracyError& e) {
    EXPECT_EQ(e.kind(), Degeneracy::blind_quadrature);
  }
}

TEST(Homodyne, ExternalLossRaisesEveryAngle) {
  IfoConfig cfg = default_config();
  cfg.internal_sqz.mode = InternalSqueezingMode::ponderomotive;
  cfg.eps_ext = 0.0;
  IfoConfig lossy = cfg;
  lossy.eps_ext = 0.1;
  const Interferometer a(cfg), b(lossy);
  const double w = two_pi * 20.0;
  for (int i = 1; i < 100; ++i) {
    const double z = pi * i / 100;
    EXPECT_GT(b.homodyne_spectrum(w, z), a.homodyne_spectrum(w, z)) << z;
  }
}

TEST(Optimal, LosslessEqualsQcrb) {
  IfoConfig cfg = lossless();
  cfg.internal_sqz.mode = InternalSqueezingMode::ponderomotive;
  const Interferometer ifo(cfg);
  const Interferometer lossy(default_config());
  for (double f : {10.0, 100.0, 1000.0}) {
    const double w = two_pi * f;
    EXPECT_NEAR(rel_diff(ifo.optimal_spectrum(w).s_hh, ifo.qcrb_lossless(w)), 0.0, 1e-12);
    EXPECT_LT(lossy.qcrb_lossless(w), lossy.optimal_spectrum(w).s_hh);
  }
}

TEST(Optimal, IdentityCovarianceGivesInverseSignal) {
  const Interferometer ifo(lossless());
  const double w = two_pi * 300.0;
  const auto v = ifo.io_relation(w).v;
  EXPECT_NEAR(rel_diff(ifo.optimal_spectrum(w).s_hh, 1.0 / v.norm_squared()), 0.0, 1e-12);
}

TEST(Optimal, MatchesHomodyneGrid) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    IfoConfig cfg = default_config();
    cfg.internal_sqz.mode = InternalSqueezingMode::ponderomotive;
    cfg.rotation = 0.02 * (u(rng) - 0.5);
    cfg.r_input = u(rng);
    cfg.theta_input = pi * u(rng);
    const Interferometer ifo(cfg);
    const double w = two_pi * std::pow(10.0, 1.0 + 2.5 * u(rng));
    const auto opt = ifo.optimal_spectrum(w);
    double best = INFINITY;
    double best_z = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double z = pi * i / 10000;
      const double s = ifo.homodyne_spectrum(w, z);
      EXPECT_GE(s, opt.s_hh * (1 - 1e-12));
      if (s < best) best = s, best_z = z;
    }
    EXPECT_LT(rel_diff(best, opt.s_hh), 1e-3);
    const double dz = std::remainder(best_z - opt.zeta, pi);
    EXPECT_LE(std::abs(dz), pi / 10000 + 1e-12);
  }
}

TEST(Optimal, ExpansionAgreementForVanishingBound) {
  IfoConfig cfg = lossless();
  cfg.t_src = 1e-3;
  const double w = two_pi * 100.0;
  const double s0 = Interferometer(cfg).optimal_spectrum(w).s_hh;
  cfg.internal_sqz.mode = InternalSqueezingMode::fixed;
  cfg.internal_sqz.r = cfg.t_src / 2;
  const double s1 = Interferometer(cfg).optimal_spectrum(w).s_hh;
  EXPECT_LT(s1, 1e-6 * s0);
}

TEST(Optimal, InputSqueezingScalesByExponential) {
  IfoConfig cfg = lossless();
  const double w = two_pi * 100.0;
  const double s0 = Interferometer(cfg).optimal_spectrum(w).s_hh;
  cfg.r_input = 0.8;
  cfg.theta_input = 0.0;  // squeezed phase quadrature in the sqz_matrix convention
  const double s1 = Interferometer(cfg).optimal_spectrum(w).s_hh;
  EXPECT_NEAR(s1 / s0, std::exp(-1.6), 1e-12);
}

TEST(Optimal, MonotonicInEachLoss) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    IfoConfig cfg = default_config();
    cfg.internal_sqz.mode = InternalSqueezingMode::ponderomotive;
    cfg.eps_arm = 1e-3 * u(rng);
    cfg.eps_ext = 0.3 * u(rng);
    cfg.rotation = 0.01 * u(rng);
    const double w = two_pi * std::pow(10.0, 1.0 + 2.5 * u(rng));
    const double s = Interferometer(cfg).optimal_spectrum(w).s_hh;
    IfoConfig up = cfg;
    up.eps_arm += 1e-4;
    EXPECT_GE(Interferometer(up).optimal_spectrum(w).s_hh, s);
    up = cfg;
    up.eps_ext += 0.01;
    EXPECT_GE(Interferometer(up).optimal_spectrum(w).s_hh, s);
    up = cfg;
    up.eps_src_channels.emplace_back(1e-4);
    EXPECT_GE(Interferometer(up).optimal_spectrum(w).s_hh, s);
  }
}

TEST(Interferometer, RejectsOutOfBandFrequency) {
  const Interferometer ifo(default_config(), Band{5.0, 5000.0});
  EXPECT_THROW((void)ifo.optimal_spectrum(two_pi * 1.0), DomainError);
}

TEST(OptimalReadout, SingularCovariance) {
  const std::array<ComplexVec2, 2> cols{ComplexVec2{1.0, 0.0}, ComplexVec2{2.0, 0.0}};
  try {
    (void)optimal_readout(cols, ComplexVec2{0.0, 1.0}, 42.0);
    FAIL();
  } catch (const DegeneracyError& e) {
    EXPECT_EQ(e.kind(), Degeneracy::singular_covariance);
    EXPECT_EQ(e.omega(), 42.0);
  }
}

}  // namespace
}  // namespace qnoise

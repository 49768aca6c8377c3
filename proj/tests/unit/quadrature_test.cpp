#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qnoise/constants.hpp"
#include "qnoise/errors.hpp"
#include "qnoise/quadrature.hpp"
#include "test_helpers.hpp"

namespace qnoise {
namespace {

using constants::pi;
using test::symplectic_defect;

TEST(ComplexMat2, InverseRoundTrip) {
  const ComplexMat2 m{Complex(1.0, 2.0), Complex(-0.5, 0.1), Complex(0.3, 0.0), Complex(2.0, -1.0)};
  EXPECT_LT(max_abs_diff(m * m.inverse(), ComplexMat2::identity()), 1e-12);
  EXPECT_LT(max_abs_diff(m.inverse() * m, ComplexMat2::identity()), 1e-12);
}

TEST(ComplexMat2, SingularInverseThrows) {
  const ComplexMat2 m{1.0, 2.0, 2.0, 4.0};
  try {
    (void)m.inverse();
    FAIL() << "expected DegeneracyError";
  } catch (const DegeneracyError& e) {
    EXPECT_EQ(e.kind(), Degeneracy::singular_matrix);
  }
}

TEST(ComplexMat2, AdjointAndProducts) {
  const ComplexMat2 a{Complex(1, 1), Complex(0, 2), Complex(3, 0), Complex(0, -1)};
  const ComplexMat2 b{Complex(2, 0), Complex(1, 1), Complex(0, 1), Complex(1, 0)};
  EXPECT_LT(max_abs_diff((a * b).adjoint(), b.adjoint() * a.adjoint()), 1e-15);
  EXPECT_EQ(a.adjoint().m12, std::conj(a.m21));
  const ComplexVec2 x{Complex(1, 0), Complex(0, 1)};
  const ComplexVec2 y = a * x;
  EXPECT_EQ(y.a1, a.m11 + a.m12 * Complex(0, 1));
  EXPECT_DOUBLE_EQ(x.norm_squared(), 2.0);
}

TEST(RotMatrix, Examples) {
  EXPECT_EQ(rot_matrix(0.0), ComplexMat2::identity());
  EXPECT_LT(max_abs_diff(rot_matrix(pi / 2), ComplexMat2{0.0, -1.0, 1.0, 0.0}), 1e-15);
  EXPECT_LT(max_abs_diff(rot_matrix(0.3) * rot_matrix(0.4), rot_matrix(0.7)), 1e-15);
}

TEST(RotMatrix, PeriodicAndUnimodular) {
  for (double a : {-2.0, 0.1, 1.3, 5.0}) {
    EXPECT_LT(max_abs_diff(rot_matrix(a), rot_matrix(a + 2 * pi)), 1e-14);
    EXPECT_NEAR(std::abs(rot_matrix(a).det() - 1.0), 0.0, 1e-14);
  }
}

TEST(RotMatrix, RejectsNonFinite) {
  EXPECT_THROW(rot_matrix(std::nan("")), DomainError);
  EXPECT_THROW(rot_matrix(INFINITY), DomainError);
}

TEST(SqzMatrix, Examples) {
  EXPECT_LT(max_abs_diff(sqz_matrix({0.0, 1.234}), ComplexMat2::identity()), 1e-15);

  const ComplexMat2 m = sqz_matrix({1.0, 0.0});
  EXPECT_NEAR(m.m11.real(), 2.718282, 1e-6);
  EXPECT_NEAR(m.m22.real(), 0.367879, 1e-6);
  EXPECT_EQ(m.m12, Complex(0.0));
  EXPECT_EQ(m.m21, Complex(0.0));

  const ComplexMat2 s = sqz_matrix({0.5, pi / 4});
  EXPECT_TRUE(s.is_real());
  EXPECT_NEAR(std::abs(s.det() - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.m12 - s.m21), 0.0, 1e-15);
  // R(pi/4) diag(e^r, e^-r) R(-pi/4) = [[cosh r, sinh r], [sinh r, cosh r]]
  EXPECT_NEAR(s.m11.real(), std::cosh(0.5), 1e-15);
  EXPECT_NEAR(s.m12.real(), std::sinh(0.5), 1e-15);
}

TEST(SqzMatrix, MatchesRotatedDiagonal) {
  for (double r : {-1.5, 0.2, 3.0}) {
    for (double th : {0.0, 0.4, 2.0}) {
      const ComplexMat2 expect =
          rot_matrix(th) * ComplexMat2::diagonal(std::exp(r), std::exp(-r)) * rot_matrix(-th);
      EXPECT_LT(max_abs_diff(sqz_matrix({r, th}), expect), 1e-12 * std::exp(std::abs(r)));
    }
  }
}

TEST(SqzMatrix, InverseIsNegatedSqueeze) {
  for (double r : {0.1, 1.0, 4.0}) {
    const SqueezeParams p(r, 0.7);
    const SqueezeParams q(-r, 0.7);
    EXPECT_LT(max_abs_diff(sqz_matrix(p) * sqz_matrix(q), ComplexMat2::identity()), 1e-12 * std::exp(2 * r));
  }
}

TEST(SqzMatrix, RejectsHugeSqueeze) {
  EXPECT_THROW(sqz_matrix({20.5, 0.0}), DomainError);
  EXPECT_NO_THROW(sqz_matrix({20.0, 0.0}));
  EXPECT_THROW(SqueezeParams(std::nan(""), 0.0), DomainError);
}

TEST(PonderomotiveMatrix, Examples) {
  EXPECT_EQ(ponderomotive_matrix(0.0), ComplexMat2::identity());
  EXPECT_EQ(ponderomotive_matrix(2.0), (ComplexMat2{1.0, 0.0, -2.0, 1.0}));
  EXPECT_EQ(ponderomotive_matrix(7.3).det(), Complex(1.0));
  EXPECT_THROW(ponderomotive_matrix(-1.0), DomainError);
}

TEST(PonderomotiveDecompose, KappaTwo) {
  const auto d = ponderomotive_decompose(2.0);
  EXPECT_NEAR(d.phi, -pi / 4, 1e-15);
  EXPECT_NEAR(d.squeeze.theta(), pi / 8, 1e-15);
  EXPECT_NEAR(d.squeeze.r(), -0.881373587019543, 1e-14);
}

TEST(PonderomotiveDecompose, SmallKappaLimit) {
  const auto d = ponderomotive_decompose(1e-12);
  EXPECT_NEAR(d.squeeze.r(), 0.0, 1e-12);
  EXPECT_NEAR(d.phi, 0.0, 1e-12);
  EXPECT_NEAR(d.squeeze.theta(), pi / 4, 1e-12);
  EXPECT_LT(max_abs_diff(sqz_matrix(d.squeeze) * rot_matrix(d.phi), ComplexMat2::identity()), 1e-11);
}

TEST(PonderomotiveDecompose, RecomposesOverDecades) {
  for (double kappa : {0.016, 1e-3, 0.1, 1.0, 10.0, 1e3}) {
    const auto d = ponderomotive_decompose(kappa);
    EXPECT_LT(max_abs_diff(sqz_matrix(d.squeeze) * rot_matrix(d.phi), ponderomotive_matrix(kappa)),
              1e-10)
        << "kappa=" << kappa;
  }
  EXPECT_THROW(ponderomotive_decompose(0.0), DomainError);
}

TEST(Symplectic, RandomizedElementaryMatrices) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  std::uniform_real_distribution<double> sq(-3.0, 3.0);
  std::uniform_real_distribution<double> lk(-3.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    EXPECT_LT(symplectic_defect(rot_matrix(angle(rng))), 1e-12);
    EXPECT_LT(symplectic_defect(sqz_matrix({sq(rng), angle(rng)})), 1e-12);
    EXPECT_LT(symplectic_defect(ponderomotive_matrix(std::pow(10.0, lk(rng)))), 1e-12);
  }
}

TEST(Arccot, Branch) {
  EXPECT_DOUBLE_EQ(arccot(0.0), pi / 2);
  EXPECT_NEAR(arccot(1.0), pi / 4, 1e-15);
  EXPECT_NEAR(arccot(-1.0), 3 * pi / 4, 1e-15);
  EXPECT_GT(arccot(-1e9), 0.0);
  EXPECT_LT(arccot(-1e9), pi);
}

TEST(Decibels, Conversions) {
  EXPECT_NEAR(db_from_r(1.0), 8.686, 5e-4);
  EXPECT_EQ(db_from_r(0.0), 0.0);
  EXPECT_NEAR(r_from_db(30.0), 3.454, 5e-4);
  for (double r : {0.01, 0.7, 3.0}) EXPECT_NEAR(r_from_db(db_from_r(r)), r, 1e-12);
}

}  // namespace
}  // namespace qnoise

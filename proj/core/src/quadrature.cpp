#include "qnoise/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qnoise/constants.hpp"
#include "qnoise/errors.hpp"

namespace qnoise {

const char* to_string(Degeneracy kind) noexcept {
  switch (kind) {
    case Degeneracy::singular_matrix:
      return "singular matrix";
    case Degeneracy::lasing_threshold:
      return "lasing threshold";
    case Degeneracy::blind_quadrature:
      return "blind quadrature";
    case Degeneracy::singular_covariance:
      return "singular covariance";
    case Degeneracy::expansion_breakdown:
      return "expansion breakdown";
  }
  return "unknown";
}

ComplexVec2 operator+(const ComplexVec2& x, const ComplexVec2& y) {
  return {x.a1 + y.a1, x.a2 + y.a2};
}

ComplexVec2 operator-(const ComplexVec2& x, const ComplexVec2& y) {
  return {x.a1 - y.a1, x.a2 - y.a2};
}

ComplexVec2 operator*(Complex s, const ComplexVec2& x) { return {s * x.a1, s * x.a2}; }

Complex inner(const ComplexVec2& x, const ComplexVec2& y) {
  return std::conj(x.a1) * y.a1 + std::conj(x.a2) * y.a2;
}

ComplexMat2 ComplexMat2::adjoint() const {
  return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)};
}

ComplexMat2 ComplexMat2::transpose() const { return {m11, m21, m12, m22}; }

ComplexMat2 ComplexMat2::inverse() const {
  const Complex d = det();
  if (d == Complex{0.0, 0.0}) {
    throw DegeneracyError(Degeneracy::singular_matrix, 0.0, "matrix inverse: determinant is zero");
  }
  const Complex inv_d = 1.0 / d;
  return {m22 * inv_d, -m12 * inv_d, -m21 * inv_d, m11 * inv_d};
}

bool ComplexMat2::is_real(double tol) const {
  return std::abs(m11.imag()) <= tol && std::abs(m12.imag()) <= tol &&
         std::abs(m21.imag()) <= tol && std::abs(m22.imag()) <= tol;
}

ComplexMat2 operator+(const ComplexMat2& a, const ComplexMat2& b) {
  return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
}

ComplexMat2 operator-(const ComplexMat2& a, const ComplexMat2& b) {
  return {a.m11 - b.m11, a.m12 - b.m12, a.m21 - b.m21, a.m22 - b.m22};
}

ComplexMat2 operator*(const ComplexMat2& a, const ComplexMat2& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

ComplexMat2 operator*(Complex s, const ComplexMat2& a) {
  return {s * a.m11, s * a.m12, s * a.m21, s * a.m22};
}

ComplexVec2 operator*(const ComplexMat2& a, const ComplexVec2& x) {
  return {a.m11 * x.a1 + a.m12 * x.a2, a.m21 * x.a1 + a.m22 * x.a2};
}

double max_abs_diff(const ComplexMat2& a, const ComplexMat2& b) {
  return std::max({std::abs(a.m11 - b.m11), std::abs(a.m12 - b.m12), std::abs(a.m21 - b.m21),
                   std::abs(a.m22 - b.m22)});
}

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

double reduce_angle(double theta) {
  double t = std::fmod(theta, constants::two_pi);
  if (t < 0.0) t += constants::two_pi;
  // fmod of a value just below a multiple of 2pi can round up to 2pi
  if (t >= constants::two_pi) t = 0.0;
  return t;
}

}  // namespace

SqueezeParams::SqueezeParams(double r, double theta) {
  require_finite(r, "squeeze factor");
  require_finite(theta, "squeeze angle");
  r_ = r;
  theta_ = reduce_angle(theta);
}

ComplexMat2 rot_matrix(double angle) {
  require_finite(angle, "rotation angle");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c, -s, s, c};
}

ComplexMat2 sqz_matrix(const SqueezeParams& p) {
  if (std::abs(p.r()) > max_squeeze_factor) {
    throw DomainError("squeeze factor |r| exceeds " + std::to_string(max_squeeze_factor));
  }
  // Expanded product R(t) diag(e^r, e^-r) R(-t); exactly symmetric.
  const double c2 = std::cos(2.0 * p.theta());
  const double s2 = std::sin(2.0 * p.theta());
  const double ch = std::cosh(p.r());
  const double sh = std::sinh(p.r());
  const double off = sh * s2;
  return {ch + sh * c2, off, off, ch - sh * c2};
}

ComplexMat2 ponderomotive_matrix(double kappa) {
  require_finite(kappa, "kappa");
  if (kappa < 0.0) throw DomainError("kappa must be non-negative");
  return {1.0, 0.0, -kappa, 1.0};
}

double arccot(double x) { return std::atan2(1.0, x); }

PonderomotiveDecomposition ponderomotive_decompose(double kappa) {
  require_finite(kappa, "kappa");
  if (kappa <= 0.0) {
    throw DomainError("ponderomotive decomposition requires kappa > 0");
  }
  const double half = 0.5 * kappa;
  return {-std::atan(half), SqueezeParams(-std::asinh(half), 0.5 * arccot(half))};
}

double db_from_r(double r) { return 20.0 * r / std::numbers::ln10; }

double r_from_db(double db) { return db * std::numbers::ln10 / 20.0; }

}  // namespace qnoise

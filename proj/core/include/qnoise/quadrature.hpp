#pragma once

// Two-photon quadrature algebra. Vectors are (a1, a2)' with a1 the amplitude
// and a2 the phase quadrature; every matrix acts on column vectors.

#include <complex>

namespace qnoise {

using Complex = std::complex<double>;

struct ComplexVec2 {
  Complex a1{};
  Complex a2{};

  double norm_squared() const { return std::norm(a1) + std::norm(a2); }
  friend bool operator==(const ComplexVec2&, const ComplexVec2&) = default;
};

ComplexVec2 operator+(const ComplexVec2& x, const ComplexVec2& y);
ComplexVec2 operator-(const ComplexVec2& x, const ComplexVec2& y);
ComplexVec2 operator*(Complex s, const ComplexVec2& x);

/// Conjugate-linear in the first argument: x^dagger y.
Complex inner(const ComplexVec2& x, const ComplexVec2& y);

struct ComplexMat2 {
  Complex m11{}, m12{}, m21{}, m22{};

  static ComplexMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static ComplexMat2 zero() { return {}; }
  static ComplexMat2 diagonal(Complex d1, Complex d2) { return {d1, 0.0, 0.0, d2}; }

  Complex det() const { return m11 * m22 - m12 * m21; }
  Complex trace() const { return m11 + m22; }
  ComplexMat2 adjoint() const;
  ComplexMat2 transpose() const;
  /// Throws DegeneracyError(singular_matrix) when det == 0 exactly.
  ComplexMat2 inverse() const;
  bool is_real(double tol = 0.0) const;

  friend bool operator==(const ComplexMat2&, const ComplexMat2&) = default;
};

ComplexMat2 operator+(const ComplexMat2& a, const ComplexMat2& b);
ComplexMat2 operator-(const ComplexMat2& a, const ComplexMat2& b);
ComplexMat2 operator*(const ComplexMat2& a, const ComplexMat2& b);
ComplexMat2 operator*(Complex s, const ComplexMat2& a);
ComplexVec2 operator*(const ComplexMat2& a, const ComplexVec2& x);

/// Largest entrywise |a_ij - b_ij|.
double max_abs_diff(const ComplexMat2& a, const ComplexMat2& b);

/// Squeeze factor r (e-folds) and squeeze angle theta [rad], theta held in
/// [0, 2pi).
class SqueezeParams {
 public:
  SqueezeParams() = default;
  /// Throws DomainError for non-finite inputs.
  SqueezeParams(double r, double theta);

  double r() const noexcept { return r_; }
  double theta() const noexcept { return theta_; }

 private:
  double r_ = 0.0;
  double theta_ = 0.0;
};

inline constexpr double max_squeeze_factor = 20.0;

ComplexMat2 rot_matrix(double angle);

/// M_rot(theta) diag(e^r, e^-r) M_rot(-theta). Rejects |r| > 20.
ComplexMat2 sqz_matrix(const SqueezeParams& p);

/// Radiation-pressure coupling [[1, 0], [-kappa, 1]].
ComplexMat2 ponderomotive_matrix(double kappa);

struct PonderomotiveDecomposition {
  double phi = 0.0;
  SqueezeParams squeeze;
};

/// Splits ponderomotive_matrix(kappa) into sqz_matrix(squeeze) * rot_matrix(phi)
/// (rotation first). Requires kappa > 0.
PonderomotiveDecomposition ponderomotive_decompose(double kappa);

/// Inverse cotangent on the (0, pi) branch, so arccot(0) == pi/2.
double arccot(double x);

/// Power squeezing in decibels: 10 log10(e^{2r}).
double db_from_r(double r);
double r_from_db(double db);

}  // namespace qnoise

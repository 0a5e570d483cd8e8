#pragma once

// Complex (iota^2 = -1) and para-complex (iota^2 = +1) numbers and linear
// fractional transformations over them. Hyper-number coordinates are
// (u, v) = (x2, x1); to_hyper / to_half_plane own that swap.

#include <cmath>
#include <string>

#include "tbsurf/error.hpp"
#include "tbsurf/tensor_core.hpp"
#include "tbsurf/vector_field.hpp"

namespace tbsurf {

struct HyperNumber {
  double re = 0.0;
  double im = 0.0;
  int unit_sign = -1;

  static HyperNumber unit(int unit_sign) { return {0.0, 1.0, unit_sign}; }
  static HyperNumber real(double x, int unit_sign) { return {x, 0.0, unit_sign}; }
};

inline void check_same_algebra(const HyperNumber& z, const HyperNumber& w) {
  if (z.unit_sign != w.unit_sign) {
    throw GeometryError(ErrorKind::DomainError, "mixing complex and para-complex numbers");
  }
}

inline HyperNumber hyper_add(const HyperNumber& z, const HyperNumber& w) {
  check_same_algebra(z, w);
  return {z.re + w.re, z.im + w.im, z.unit_sign};
}

inline HyperNumber hyper_mul(const HyperNumber& z, const HyperNumber& w) {
  check_same_algebra(z, w);
  return {z.re * w.re + z.unit_sign * z.im * w.im, z.re * w.im + z.im * w.re, z.unit_sign};
}

inline HyperNumber hyper_conj(const HyperNumber& z) { return {z.re, -z.im, z.unit_sign}; }

/// z * conj(z) = u^2 - unit_sign v^2.
inline double hyper_norm(const HyperNumber& z) {
  return z.re * z.re - z.unit_sign * z.im * z.im;
}

inline HyperNumber hyper_inv(const HyperNumber& z, double tol = kDefaultTol) {
  const double n = hyper_norm(z);
  const double scale = std::max(1.0, z.re * z.re + z.im * z.im);
  if (std::abs(n) <= tol * scale) {
    throw GeometryError(ErrorKind::ZeroDivisor, "hyper-number is not invertible");
  }
  return {z.re / n, -z.im / n, z.unit_sign};
}

inline HyperNumber operator+(const HyperNumber& z, const HyperNumber& w) { return hyper_add(z, w); }
inline HyperNumber operator*(const HyperNumber& z, const HyperNumber& w) { return hyper_mul(z, w); }
inline HyperNumber operator*(double s, const HyperNumber& z) { return {s * z.re, s * z.im, z.unit_sign}; }

inline double max_abs_diff(const HyperNumber& z, const HyperNumber& w) {
  return std::max(std::abs(z.re - w.re), std::abs(z.im - w.im));
}

inline HyperNumber to_hyper(const Vec2& x, int unit_sign) { return {x[1], x[0], unit_sign}; }
inline Vec2 to_half_plane(const HyperNumber& z) { return {z.im, z.re}; }

/// Representative of an element of PSL(2, R).
struct Mobius {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;

  static Mobius make(double a, double b, double c, double d) {
    if (std::abs(a * d - b * c - 1.0) > 1e-9) {
      throw GeometryError(ErrorKind::DomainError, "Mobius matrix must have determinant 1");
    }
    return {a, b, c, d};
  }
  static Mobius identity() { return {}; }
  static Mobius rotation(double theta) {
    return {std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta)};
  }
  static Mobius boost(double t) { return {std::cosh(t), std::sinh(t), std::sinh(t), std::cosh(t)}; }
  static Mobius translation(double d) { return {1.0, d, 0.0, 1.0}; }
  static Mobius dilation(double m) {
    const double r = std::sqrt(m);
    return {r, 0.0, 0.0, 1.0 / r};
  }
};

inline Mobius matrix_product(const Mobius& x, const Mobius& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline HyperNumber lft_denominator(const Mobius& A, const HyperNumber& z) {
  return {A.c * z.re + A.d, A.c * z.im, z.unit_sign};
}

/// (a z + b) / (c z + d); DomainError where c z + d is a zero divisor.
inline HyperNumber lft_apply(const Mobius& A, const HyperNumber& z, double tol = kDefaultTol) {
  const HyperNumber num{A.a * z.re + A.b, A.a * z.im, z.unit_sign};
  const HyperNumber den = lft_denominator(A, z);
  try {
    return num * hyper_inv(den, tol);
  } catch (const GeometryError&) {
    throw GeometryError(ErrorKind::DomainError, "c z + d is not invertible");
  }
}

inline bool lft_compose_law_check(const Mobius& A, const Mobius& B, const HyperNumber& z,
                                  double tol = kDefaultTol) {
  const HyperNumber lhs = lft_apply(A, lft_apply(B, z));
  const HyperNumber rhs = lft_apply(matrix_product(A, B), z);
  const double scale = std::max({1.0, std::abs(rhs.re), std::abs(rhs.im)});
  return max_abs_diff(lhs, rhs) <= tol * scale;
}

/// Transformations agree as elements of PSL(2, R) (compared on three generic points).
inline bool same_transformation(const Mobius& A, const Mobius& B, int unit_sign, double tol = 1e-9) {
  const HyperNumber probes[] = {{0.3, 0.7, unit_sign}, {-1.1, 0.4, unit_sign}, {0.25, 2.3, unit_sign}};
  for (const auto& z : probes) {
    if (max_abs_diff(lft_apply(A, z), lft_apply(B, z)) > tol) return false;
  }
  return true;
}

/// Im of (a z + b)/(c z + d), computed as Im(z) * ((c z + d)(c zbar + d))^-1.
inline double im_transform(const Mobius& A, const HyperNumber& z, double tol = kDefaultTol) {
  const HyperNumber den = lft_denominator(A, z);
  const HyperNumber prod = den * hyper_conj(den);
  const double n = prod.re;
  if (std::abs(n) <= tol * std::max(1.0, std::abs(n) + den.re * den.re)) {
    throw GeometryError(ErrorKind::DomainError, "c z + d is not invertible");
  }
  return z.im / n;
}

enum class GeneratorKind { Translation, Dilation, RotationOrBoost };

/// Infinitesimal generator of a one-parameter subgroup exp(t M), M in sl(2, R).
/// The flow derivative is dz/dt = M_b + (M_a - M_d) z - M_c z^2.
inline VectorFieldPoly sl2_generator_field(double ma, double mb, double mc, double md, int unit_sign) {
  const double p = mb;
  const double q = ma - md;
  const double r = -mc;
  // In half-plane coordinates (x1, x2) = (v, u):
  //   X^1 = q x1 + 2 r x1 x2
  //   X^2 = p + q x2 + r (x2^2 + unit_sign x1^2)
  VectorFieldPoly f;
  f.coef[0] = {0.0, q, 0.0, 0.0, 2.0 * r, 0.0};
  f.coef[1] = {p, 0.0, q, r * unit_sign, 0.0, r};
  return f;
}

/// Translation z -> z + t, dilation z -> e^t z, and the rotation (complex) or
/// boost (para-complex) subgroup fixing iota.
inline VectorFieldPoly generator_field(GeneratorKind kind, int unit_sign) {
  switch (kind) {
    case GeneratorKind::Translation:
      return sl2_generator_field(0.0, 1.0, 0.0, 0.0, unit_sign);
    case GeneratorKind::Dilation:
      return sl2_generator_field(0.5, 0.0, 0.0, -0.5, unit_sign);
    case GeneratorKind::RotationOrBoost:
      return unit_sign < 0 ? sl2_generator_field(0.0, 1.0, -1.0, 0.0, unit_sign)
                           : sl2_generator_field(0.0, 1.0, 1.0, 0.0, unit_sign);
  }
  return {};
}

/// The one-parameter subgroup whose generator is generator_field(kind, unit_sign).
inline Mobius generator_flow(GeneratorKind kind, int unit_sign, double t) {
  switch (kind) {
    case GeneratorKind::Translation: return Mobius::translation(t);
    case GeneratorKind::Dilation: return Mobius::dilation(std::exp(t));
    case GeneratorKind::RotationOrBoost: return unit_sign < 0 ? Mobius::rotation(t) : Mobius::boost(t);
  }
  return {};
}

}  // namespace tbsurf

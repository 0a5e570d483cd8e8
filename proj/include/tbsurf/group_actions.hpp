#pragma once

// Affine maps (x1, x2) -> (m x1, a x1 + b x2 + d) preserving the half-plane,
// and their action on Type B constants.
//
// act(T, C) is the push-forward of the connection along T, i.e. the constants
// of (T^-1)^* nabla^C. This is a left action:
//   act(compose(T1, T2), C) == act(T1, act(T2, C)).

#include <cmath>
#include <utility>

#include "tbsurf/error.hpp"
#include "tbsurf/tensor_core.hpp"

namespace tbsurf {

struct AffineMap {
  double m = 1.0;
  double a = 0.0;
  double b = 1.0;
  double d = 0.0;

  static AffineMap identity() { return {}; }
  /// T_{a,b}: (x1, x2) -> (x1, a x1 + b x2).
  static AffineMap shear_scale(double a, double b) { return make(1.0, a, b, 0.0); }
  static AffineMap flip() { return {1.0, 0.0, -1.0, 0.0}; }

  static AffineMap make(double m, double a, double b, double d) {
    if (!(m > 0.0) || b == 0.0 || !std::isfinite(m) || !std::isfinite(a) || !std::isfinite(b) ||
        !std::isfinite(d)) {
      throw GeometryError(ErrorKind::DomainError, "affine map needs m > 0 and b != 0");
    }
    return {m, a, b, d};
  }

  Vec2 operator()(const Vec2& x) const { return {m * x[0], a * x[0] + b * x[1] + d}; }

  /// Row = output component, column = input component.
  Mat2 jacobian() const { return {{{m, 0.0}, {a, b}}}; }

  bool in_H(double tol = 0.0) const { return std::abs(a) <= tol && std::abs(b - m) <= tol; }
  bool in_I(double tol = 0.0) const { return std::abs(m - 1.0) <= tol && std::abs(d) <= tol; }
  bool in_I_plus(double tol = 0.0) const { return in_I(tol) && b > 0.0; }
  bool is_flip(double tol = 0.0) const {
    return std::abs(m - 1.0) <= tol && std::abs(a) <= tol && std::abs(b + 1.0) <= tol &&
           std::abs(d) <= tol;
  }
};

inline double max_abs_diff(const AffineMap& s, const AffineMap& t) {
  return std::max({std::abs(s.m - t.m), std::abs(s.a - t.a), std::abs(s.b - t.b), std::abs(s.d - t.d)});
}

/// S_{a,b}: (x1, x2) -> (x1, (x2 - a x1) / b), the parametrization of I used for
/// the metric-coefficient formulas.
struct SParam {
  double a = 0.0;
  double b = 1.0;

  AffineMap to_affine() const {
    if (b == 0.0) throw GeometryError(ErrorKind::DomainError, "S_{a,b} needs b != 0");
    return AffineMap::make(1.0, -a / b, 1.0 / b, 0.0);
  }
  static SParam from_affine(const AffineMap& t) {
    if (!t.in_I(1e-12)) throw GeometryError(ErrorKind::DomainError, "map is not in I");
    return {-t.a / t.b, 1.0 / t.b};
  }
};

/// x -> t1(t2(x)).
inline AffineMap compose(const AffineMap& t1, const AffineMap& t2) {
  return {t1.m * t2.m, t1.a * t2.m + t1.b * t2.a, t1.b * t2.b, t1.b * t2.d + t1.d};
}

inline AffineMap inverse(const AffineMap& t) {
  return {1.0 / t.m, -t.a / (t.m * t.b), 1.0 / t.b, -t.d / t.b};
}

inline Mat2 inverse(const Mat2& j) {
  const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  return {{{j[1][1] / det, -j[0][1] / det}, {-j[1][0] / det, j[0][0] / det}}};
}

/// Constants of the push-forward connection T.nabla^C = (T^-1)^* nabla^C.
/// With J the Jacobian of T:  C'_ij^k = m J^k_c C_ab^c (J^-1)^a_i (J^-1)^b_j.
inline ChristoffelConstants act(const AffineMap& t, const ChristoffelConstants& C) {
  const Mat2 j = t.jacobian();
  const Mat2 ji = inverse(j);
  ChristoffelConstants out;
  for (int i = 1; i <= 2; ++i) {
    for (int jj = 1; jj <= 2; ++jj) {
      for (int k = 1; k <= 2; ++k) {
        double s = 0.0;
        for (int a = 1; a <= 2; ++a) {
          for (int b = 1; b <= 2; ++b) {
            const double w = ji[a - 1][i - 1] * ji[b - 1][jj - 1];
            if (w == 0.0) continue;
            for (int c = 1; c <= 2; ++c) s += j[k - 1][c - 1] * C(a, b, c) * w;
          }
        }
        out(i, jj, k) = t.m * s;
      }
    }
  }
  return out;
}

/// Push-forward of a Ricci-type coefficient array: r' = m^2 J^-T r J^-1.
/// Matches ricci_type_b(act(t, C)) for every C (equivariance).
inline RicciCoefficients transport_ricci(const AffineMap& t, const RicciCoefficients& r) {
  const Mat2 ji = inverse(t.jacobian());
  RicciCoefficients out;
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      double s = 0.0;
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) s += ji[a - 1][i - 1] * r(a, b) * ji[b - 1][j - 1];
      out(i, j) = t.m * t.m * s;
    }
  }
  return out;
}

/// Symmetric Ricci coefficients after acting by S_{a,b}.
inline RicciCoefficients act_metric_coeffs(const SParam& s, const RicciCoefficients& rho_s) {
  const double r11 = rho_s(1, 1), r12 = 0.5 * (rho_s(1, 2) + rho_s(2, 1)), r22 = rho_s(2, 2);
  const double n11 = r11 + 2.0 * s.a * r12 + s.a * s.a * r22;
  const double n12 = s.b * (r12 + s.a * r22);
  const double n22 = s.b * s.b * r22;
  return {n11, n12, n12, n22};
}

/// (12-component, 11-component) of S_{alpha,beta} acting on rho_s.
inline std::pair<double, double> psi_map(double alpha, double beta, const RicciCoefficients& rho_s) {
  const double r11 = rho_s(1, 1), r12 = rho_s(1, 2), r22 = rho_s(2, 2);
  return {beta * (r12 + alpha * r22), r11 + 2.0 * alpha * r12 + alpha * alpha * r22};
}

/// Determinant of d(psi_map)/d(alpha, beta); independent of beta.
inline double psi_jacobian_det(double alpha, double /*beta*/, const RicciCoefficients& rho_s) {
  const double t = rho_s(1, 2) + alpha * rho_s(2, 2);
  return -2.0 * t * t;
}

}  // namespace tbsurf

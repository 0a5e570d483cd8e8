#pragma once

// Numerical differential geometry used to check the closed forms elsewhere in
// the library: curvature by central differences, connection and metric
// pullbacks under smooth maps, the affine Killing operator, and Levi-Civita
// tables. Nothing here relies on the Type B Ricci formula.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tbsurf/error.hpp"
#include "tbsurf/group_actions.hpp"
#include "tbsurf/paracomplex.hpp"
#include "tbsurf/tensor_core.hpp"
#include "tbsurf/vector_field.hpp"

namespace tbsurf {

inline constexpr double kDefaultStep = 1e-5;

struct Tensor2222 {
  std::array<double, 16> v{};
  static constexpr std::size_t index(int i, int j, int k, int l) {
    return static_cast<std::size_t>((i - 1) * 8 + (j - 1) * 4 + (k - 1) * 2 + (l - 1));
  }
  double& operator()(int i, int j, int k, int l) { return v[index(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return v[index(i, j, k, l)]; }
};

/// A diffeomorphism germ given with closed-form first and second derivatives.
/// jacobian(x)[m][i] = d Phi^m / dx^i;  hessian(x)(i, j, m) = d^2 Phi^m / dx^i dx^j.
struct SmoothMap {
  std::string name;
  std::function<Vec2(const Vec2&)> eval;
  std::function<Mat2(const Vec2&)> jacobian;
  std::function<Tensor222(const Vec2&)> hessian;
};

struct ConnectionField {
  std::function<Tensor222(const Vec2&)> gamma;
};

struct MetricField {
  std::function<Mat2(const Vec2&)> g;
};

enum class MetricTag { GPlus, GMinus, GZero, Flat };

/// epsilon_ijk = delta_1i + delta_1j - delta_1k.
constexpr int index_weight(int i, int j, int k) {
  return (i == 1 ? 1 : 0) + (j == 1 ? 1 : 0) - (k == 1 ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Catalog of fields and maps

inline ConnectionField type_b_connection(const ChristoffelConstants& C) {
  return {[C](const Vec2& x) {
    Tensor222 g;
    for (std::size_t n = 0; n < 8; ++n) g.v[n] = C.v[n] / x[0];
    return g;
  }};
}

inline ConnectionField flat_connection() {
  return {[](const Vec2&) { return Tensor222{}; }};
}

inline MetricField metric_catalog(MetricTag tag) {
  switch (tag) {
    case MetricTag::GPlus:
      return {[](const Vec2& x) {
        const double w = 1.0 / (x[0] * x[0]);
        return Mat2{{{w, 0.0}, {0.0, w}}};
      }};
    case MetricTag::GMinus:
      return {[](const Vec2& x) {
        const double w = 1.0 / (x[0] * x[0]);
        return Mat2{{{w, 0.0}, {0.0, -w}}};
      }};
    case MetricTag::GZero:
      return {[](const Vec2& x) {
        const double w = 1.0 / (x[0] * x[0]);
        return Mat2{{{0.0, w}, {w, 0.0}}};
      }};
    case MetricTag::Flat:
      return {[](const Vec2&) { return Mat2{{{1.0, 0.0}, {0.0, 1.0}}}; }};
  }
  return {};
}

/// Levi-Civita constants of g+, g-, g0 (Gamma = C / x1), and the zero array for flat.
inline ChristoffelConstants levi_civita_catalog(MetricTag tag) {
  ChristoffelConstants c;
  switch (tag) {
    case MetricTag::GPlus:
    case MetricTag::GMinus:
      c(1, 1, 1) = -1.0;
      c(1, 2, 2) = -1.0;
      c(2, 1, 2) = -1.0;
      c(2, 2, 1) = tag == MetricTag::GPlus ? 1.0 : -1.0;
      break;
    case MetricTag::GZero:
      // g0 has g_12 = x1^-2, so Gamma_11^1 = g^12 d_1 g_12 = -2 / x1.
      c(1, 1, 1) = -2.0;
      break;
    case MetricTag::Flat:
      break;
  }
  return c;
}

inline ChristoffelConstants c_plus() { return levi_civita_catalog(MetricTag::GPlus); }
inline ChristoffelConstants c_minus() { return levi_civita_catalog(MetricTag::GMinus); }
inline ChristoffelConstants c_zero() { return levi_civita_catalog(MetricTag::GZero); }

inline SmoothMap identity_map() {
  return {"identity", [](const Vec2& x) { return x; },
          [](const Vec2&) { return Mat2{{{1.0, 0.0}, {0.0, 1.0}}}; },
          [](const Vec2&) { return Tensor222{}; }};
}

inline SmoothMap affine_lift(const AffineMap& t) {
  return {"affine", [t](const Vec2& x) { return t(x); }, [t](const Vec2&) { return t.jacobian(); },
          [](const Vec2&) { return Tensor222{}; }};
}

/// Phi_c(u, v) = (u, v / (1 - c v)) with (u, v) = (x2, x1).
inline SmoothMap phi_c_map(double c) {
  return {"phi_c",
          [c](const Vec2& x) { return Vec2{x[0] / (1.0 - c * x[0]), x[1]}; },
          [c](const Vec2& x) {
            const double s = 1.0 - c * x[0];
            return Mat2{{{1.0 / (s * s), 0.0}, {0.0, 1.0}}};
          },
          [c](const Vec2& x) {
            const double s = 1.0 - c * x[0];
            Tensor222 h;
            h(1, 1, 1) = 2.0 * c / (s * s * s);
            return h;
          }};
}

/// U(u, v) = (u, -1/v); an involution exchanging the flat metric 2 du dw and g0.
inline SmoothMap u_map() {
  return {"U",
          [](const Vec2& x) { return Vec2{-1.0 / x[0], x[1]}; },
          [](const Vec2& x) { return Mat2{{{1.0 / (x[0] * x[0]), 0.0}, {0.0, 1.0}}}; },
          [](const Vec2& x) {
            Tensor222 h;
            h(1, 1, 1) = -2.0 / (x[0] * x[0] * x[0]);
            return h;
          }};
}

/// The linear fractional transformation T_A written in half-plane coordinates.
/// Derivatives use dw/dz = (cz+d)^-2 and d^2w/dz^2 = -2c (cz+d)^-3.
inline SmoothMap lft_map(const Mobius& A, int unit_sign) {
  auto first = [A, unit_sign](const Vec2& x) {
    const HyperNumber den = lft_denominator(A, to_hyper(x, unit_sign));
    const HyperNumber inv = hyper_inv(den);
    return inv * inv;
  };
  auto second = [A, unit_sign](const Vec2& x) {
    const HyperNumber den = lft_denominator(A, to_hyper(x, unit_sign));
    const HyperNumber inv = hyper_inv(den);
    return (-2.0 * A.c) * (inv * inv * inv);
  };
  return {"lft",
          [A, unit_sign](const Vec2& x) { return to_half_plane(lft_apply(A, to_hyper(x, unit_sign))); },
          [first, unit_sign](const Vec2& x) {
            const HyperNumber w1 = first(x);
            const double p = w1.re, q = w1.im;
            // rows: (x1' = Im w, x2' = Re w); columns: (x1 = v, x2 = u)
            return Mat2{{{p, q}, {unit_sign * q, p}}};
          },
          [second, unit_sign](const Vec2& x) {
            const HyperNumber w2 = second(x);
            const double P = w2.re, Q = w2.im, s = unit_sign;
            Tensor222 h;
            h(1, 1, 1) = s * Q;  // d_v d_v Im
            h(1, 1, 2) = s * P;  // d_v d_v Re
            h(1, 2, 1) = P;
            h(1, 2, 2) = s * Q;
            h(2, 1, 1) = P;
            h(2, 1, 2) = s * Q;
            h(2, 2, 1) = Q;  // d_u d_u Im
            h(2, 2, 2) = P;  // d_u d_u Re
            return h;
          }};
}

// ---------------------------------------------------------------------------
// Curvature

namespace detail {

inline void check_stencil(const Point& p, double h) {
  if (!(h > 0.0) || !(p.x1() > 2.0 * h)) {
    throw GeometryError(ErrorKind::DomainError, "finite-difference stencil leaves x1 > 0");
  }
}

/// dgamma[l] = d Gamma / d x^l by central differences.
inline std::array<Tensor222, 2> gamma_partials(const ConnectionField& field, const Vec2& x, double h) {
  std::array<Tensor222, 2> out;
  for (int l = 0; l < 2; ++l) {
    Vec2 plus = x, minus = x;
    plus[static_cast<std::size_t>(l)] += h;
    minus[static_cast<std::size_t>(l)] -= h;
    const Tensor222 gp = field.gamma(plus);
    const Tensor222 gm = field.gamma(minus);
    for (std::size_t n = 0; n < 8; ++n) out[static_cast<std::size_t>(l)].v[n] = (gp.v[n] - gm.v[n]) / (2.0 * h);
  }
  return out;
}

}  // namespace detail

/// R_ijk^l = d_i Gamma_jk^l - d_j Gamma_ik^l + Gamma_in^l Gamma_jk^n - Gamma_jn^l Gamma_ik^n.
inline Tensor2222 curvature_at(const ConnectionField& field, const Point& p, double h = kDefaultStep) {
  detail::check_stencil(p, h);
  const Vec2 x = p.coords();
  const Tensor222 g = field.gamma(x);
  const auto dg = detail::gamma_partials(field, x, h);
  Tensor2222 r;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k)
        for (int l = 1; l <= 2; ++l) {
          double s = dg[static_cast<std::size_t>(i - 1)](j, k, l) - dg[static_cast<std::size_t>(j - 1)](i, k, l);
          for (int n = 1; n <= 2; ++n) s += g(i, n, l) * g(j, k, n) - g(j, n, l) * g(i, k, n);
          r(i, j, k, l) = s;
        }
  return r;
}

/// rho_jk = R_ijk^i, pointwise (not rescaled by x1^2).
inline RicciCoefficients ricci_fd_oracle(const ConnectionField& field, const Point& p, double h = kDefaultStep) {
  const Tensor2222 r = curvature_at(field, p, h);
  RicciCoefficients out;
  for (int j = 1; j <= 2; ++j)
    for (int k = 1; k <= 2; ++k) out(j, k) = r(1, j, k, 1) + r(2, j, k, 2);
  return out;
}

// ---------------------------------------------------------------------------
// Pullbacks

/// Christoffel symbols of Phi^* nabla at x:
///   (J^-1)^k_m [ Gamma_ab^m(Phi(x)) J^a_i J^b_j + d_i d_j Phi^m ].
inline Tensor222 pullback_connection_at(const SmoothMap& phi, const ConnectionField& field, const Vec2& x) {
  const Mat2 j = phi.jacobian(x);
  const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  const double scale = std::max({std::abs(j[0][0]), std::abs(j[0][1]), std::abs(j[1][0]), std::abs(j[1][1])});
  if (!(std::abs(det) > 1e-14 * scale * scale)) {
    throw GeometryError(ErrorKind::SingularJacobian, "map '" + phi.name + "' is singular at the point");
  }
  const Mat2 ji = inverse(j);
  const Tensor222 g = field.gamma(phi.eval(x));
  const Tensor222 hess = phi.hessian(x);
  Tensor222 out;
  for (int i = 1; i <= 2; ++i)
    for (int jj = 1; jj <= 2; ++jj) {
      std::array<double, 2> t{};
      for (int m = 1; m <= 2; ++m) {
        double s = hess(i, jj, m);
        for (int a = 1; a <= 2; ++a)
          for (int b = 1; b <= 2; ++b) s += g(a, b, m) * j[a - 1][i - 1] * j[b - 1][jj - 1];
        t[static_cast<std::size_t>(m - 1)] = s;
      }
      for (int k = 1; k <= 2; ++k) out(i, jj, k) = ji[k - 1][0] * t[0] + ji[k - 1][1] * t[1];
    }
  return out;
}

/// (Phi^* g)_ij(x) = J^a_i g_ab(Phi(x)) J^b_j.
inline Mat2 pullback_metric_at(const SmoothMap& phi, const MetricField& metric, const Vec2& x) {
  const Mat2 j = phi.jacobian(x);
  const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  if (det == 0.0 || !std::isfinite(det)) {
    throw GeometryError(ErrorKind::SingularJacobian, "map '" + phi.name + "' is singular at the point");
  }
  const Mat2 g = metric.g(phi.eval(x));
  Mat2 out{};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      double s = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) s += j[a][i] * g[a][b] * j[b][k];
      out[i][k] = s;
    }
  return out;
}

/// True iff x1 * (Phi^* nabla^C) has the same constants at every sample point.
inline bool type_b_constancy_check(const SmoothMap& phi, const ChristoffelConstants& C,
                                   std::span<const Point> points, double tol = 1e-8) {
  if (points.size() < 3) {
    throw GeometryError(ErrorKind::DomainError, "constancy check needs at least three points");
  }
  const ConnectionField field = type_b_connection(C);
  auto constants_at = [&](const Point& p) { return p.x1() * pullback_connection_at(phi, field, p.coords()); };
  const Tensor222 first = constants_at(points[0]);
  const double scale = std::max(1.0, first.max_abs());
  for (std::size_t n = 1; n < points.size(); ++n) {
    if (max_abs_diff(constants_at(points[n]), first) > tol * scale) return false;
  }
  return true;
}

/// Constants of x1 * Phi_c^* nabla^C at a point with x1 = v:
///   C0 + (1 - c v)^(1 - 2 eps_ijk) (C - C0).
inline Tensor222 phi_c_pullback_closed_form(double c, const ChristoffelConstants& C, double v) {
  const double s = 1.0 - c * v;
  if (std::abs(s) < 1e-12) throw GeometryError(ErrorKind::PoleError, "v = 1/c is a pole of Phi_c");
  const ChristoffelConstants c0 = c_zero();
  Tensor222 out;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k)
        out(i, j, k) = c0(i, j, k) + std::pow(s, 1 - 2 * index_weight(i, j, k)) * (C(i, j, k) - c0(i, j, k));
  return out;
}

/// U^* nabla^C - nabla^e at the point U^-1(x) where x has x1 = v:
///   v^(2 eps_ijk - 1) (C - C0).
inline Tensor222 u_pullback_closed_form(const ChristoffelConstants& C, double v) {
  if (v == 0.0) throw GeometryError(ErrorKind::PoleError, "v = 0 is a pole of U");
  const ChristoffelConstants c0 = c_zero();
  Tensor222 out;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k)
        out(i, j, k) = std::pow(v, 2 * index_weight(i, j, k) - 1) * (C(i, j, k) - c0(i, j, k));
  return out;
}

// ---------------------------------------------------------------------------
// Affine Killing fields

/// (L_X Gamma)_ij^k = X^l d_l Gamma_ij^k - (d_l X^k) Gamma_ij^l + (d_i X^l) Gamma_lj^k
///                    + (d_j X^l) Gamma_il^k + d_i d_j X^k
inline Tensor222 lie_derivative_connection_at(const VectorFieldPoly& field, const ConnectionField& conn,
                                              const Point& p, double h = kDefaultStep) {
  detail::check_stencil(p, h);
  const Vec2 x = p.coords();
  const Tensor222 g = conn.gamma(x);
  const auto dg = detail::gamma_partials(conn, x, h);
  const Vec2 X = field(x);
  const Mat2 dX = field.jacobian(x);  // dX[k][l] = d_l X^k
  const Tensor222 ddX = field.hessian();
  Tensor222 out;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) {
        double s = ddX(i, j, k);
        for (int l = 1; l <= 2; ++l) {
          s += X[static_cast<std::size_t>(l - 1)] * dg[static_cast<std::size_t>(l - 1)](i, j, k);
          s -= dX[k - 1][l - 1] * g(i, j, l);
          s += dX[l - 1][i - 1] * g(l, j, k);
          s += dX[l - 1][j - 1] * g(i, l, k);
        }
        out(i, j, k) = s;
      }
  return out;
}

struct KillingSolution {
  int dimension = 0;
  std::vector<VectorFieldPoly> fields;  // orthonormal null-space basis in coefficient space
  std::vector<double> singular_values;  // descending
  double gap = std::numeric_limits<double>::infinity();
};

/// Affine Killing fields of nabla^C within the degree <= 2 polynomial ansatz.
/// Singular values below rank_tol * sigma_max span the null space; the ratio
/// between the smallest retained and largest discarded value must be >= 10.
inline KillingSolution killing_solve(const ChristoffelConstants& C, std::span<const Point> points,
                                     double rank_tol = 1e-6, double h = kDefaultStep) {
  if (points.size() < 8) throw GeometryError(ErrorKind::DomainError, "Killing solve needs at least 8 points");
  constexpr int kUnknowns = 12;
  const ConnectionField conn = type_b_connection(C);
  Eigen::MatrixXd system(static_cast<Eigen::Index>(8 * points.size()), kUnknowns);
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    for (int n = 0; n < kUnknowns; ++n) {
      const Tensor222 l = lie_derivative_connection_at(VectorFieldPoly::basis(static_cast<std::size_t>(n)), conn,
                                                       points[pi], h);
      for (std::size_t r = 0; r < 8; ++r) system(static_cast<Eigen::Index>(8 * pi + r), n) = l.v[r];
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system, Eigen::ComputeFullV);
  const Eigen::VectorXd sigma = svd.singularValues();
  KillingSolution out;
  out.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
  const double cutoff = rank_tol * sigma(0);
  int rank = 0;
  while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
  out.dimension = kUnknowns - rank;
  if (rank > 0 && rank < sigma.size()) {
    out.gap = sigma(rank) > 0.0 ? sigma(rank - 1) / sigma(rank) : std::numeric_limits<double>::infinity();
  }
  const Eigen::MatrixXd& v = svd.matrixV();
  for (int col = rank; col < kUnknowns; ++col) {
    VectorFieldPoly f;
    for (int n = 0; n < kUnknowns; ++n)
      f.coef[static_cast<std::size_t>(n) / VectorFieldPoly::kMonomials]
            [static_cast<std::size_t>(n) % VectorFieldPoly::kMonomials] = v(n, col);
    out.fields.push_back(f);
  }
  if (out.gap < 10.0) {
    throw GeometryError(ErrorKind::IllConditioned,
                        "singular value gap " + std::to_string(out.gap) + " is below 10");
  }
  return out;
}

inline int killing_dimension(const ChristoffelConstants& C, std::span<const Point> points, double rank_tol = 1e-6) {
  return killing_solve(C, points, rank_tol).dimension;
}

// ---------------------------------------------------------------------------
// Levi-Civita from a metric

/// Gamma_ij^k = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij), metric derivatives by central differences.
inline Tensor222 levi_civita_numeric(const MetricField& metric, const Point& p, double h = kDefaultStep) {
  detail::check_stencil(p, h);
  const Vec2 x = p.coords();
  const Mat2 gi = inverse(metric.g(x));
  std::array<Mat2, 2> dg{};
  for (int l = 0; l < 2; ++l) {
    Vec2 plus = x, minus = x;
    plus[static_cast<std::size_t>(l)] += h;
    minus[static_cast<std::size_t>(l)] -= h;
    const Mat2 gp = metric.g(plus), gm = metric.g(minus);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) dg[static_cast<std::size_t>(l)][a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h);
  }
  Tensor222 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double s = 0.0;
        for (int l = 0; l < 2; ++l) s += gi[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        out(i + 1, j + 1, k + 1) = 0.5 * s;
      }
  return out;
}

}  // namespace tbsurf

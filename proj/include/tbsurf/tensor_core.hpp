#pragma once

// Type B connections on the half-plane x1 > 0: Christoffel symbols
// Gamma_ij^k = C_ij^k / x1 with constant C, torsion allowed.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "tbsurf/error.hpp"

namespace tbsurf {

inline constexpr double kDefaultTol = 1e-9;

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Array with two lower and one upper index in dimension 2, 1-based access.
/// Storage is row-major in (i, j, k).
struct Tensor222 {
  std::array<double, 8> v{};

  static constexpr std::size_t index(int i, int j, int k) {
    return static_cast<std::size_t>((i - 1) * 4 + (j - 1) * 2 + (k - 1));
  }
  double& operator()(int i, int j, int k) { return v[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return v[index(i, j, k)]; }

  bool all_finite() const {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  }
  double max_abs() const {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  bool operator==(const Tensor222&) const = default;
};

inline double max_abs_diff(const Tensor222& a, const Tensor222& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < 8; ++n) m = std::max(m, std::abs(a.v[n] - b.v[n]));
  return m;
}

inline Tensor222 operator-(const Tensor222& a, const Tensor222& b) {
  Tensor222 out;
  for (std::size_t n = 0; n < 8; ++n) out.v[n] = a.v[n] - b.v[n];
  return out;
}

inline Tensor222 operator*(double s, const Tensor222& a) {
  Tensor222 out;
  for (std::size_t n = 0; n < 8; ++n) out.v[n] = s * a.v[n];
  return out;
}

/// The eight constants C_ij^k of a Type B connection.
struct ChristoffelConstants : Tensor222 {
  ChristoffelConstants() = default;
  explicit ChristoffelConstants(const Tensor222& t) : Tensor222(t) {}
  explicit ChristoffelConstants(const std::array<double, 8>& values) { v = values; }
};

/// Coefficients of (x1)^-2 in a Ricci-type 2-tensor. Not assumed symmetric.
struct RicciCoefficients {
  std::array<double, 4> r{};

  RicciCoefficients() = default;
  RicciCoefficients(double r11, double r12, double r21, double r22) : r{r11, r12, r21, r22} {}

  double& operator()(int j, int k) { return r[static_cast<std::size_t>((j - 1) * 2 + (k - 1))]; }
  double operator()(int j, int k) const { return r[static_cast<std::size_t>((j - 1) * 2 + (k - 1))]; }

  double max_abs() const {
    double m = 0.0;
    for (double x : r) m = std::max(m, std::abs(x));
    return m;
  }
  bool is_symmetric(double tol = 0.0) const { return std::abs(r[1] - r[2]) <= tol; }
  bool operator==(const RicciCoefficients&) const = default;
};

inline double max_abs_diff(const RicciCoefficients& a, const RicciCoefficients& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < 4; ++n) m = std::max(m, std::abs(a.r[n] - b.r[n]));
  return m;
}

inline RicciCoefficients operator-(const RicciCoefficients& a) {
  return {-a.r[0], -a.r[1], -a.r[2], -a.r[3]};
}

struct Signature {
  int p = 0;
  int q = 0;
  bool degenerate = true;
  bool operator==(const Signature&) const = default;
};

/// A point of the half-plane R+ x R.
class Point {
 public:
  Point(double x1, double x2) : x1_(x1), x2_(x2) {
    if (!(x1 > 0.0) || !std::isfinite(x1) || !std::isfinite(x2)) {
      throw GeometryError(ErrorKind::DomainError, "point must satisfy x1 > 0");
    }
  }
  double x1() const { return x1_; }
  double x2() const { return x2_; }
  Vec2 coords() const { return {x1_, x2_}; }

 private:
  double x1_;
  double x2_;
};

/// Ricci tensor of the Type B connection with constants C, as coefficients of (x1)^-2.
inline RicciCoefficients ricci_type_b(const ChristoffelConstants& C) {
  const double c111 = C(1, 1, 1), c112 = C(1, 1, 2), c121 = C(1, 2, 1), c122 = C(1, 2, 2);
  const double c211 = C(2, 1, 1), c212 = C(2, 1, 2), c221 = C(2, 2, 1), c222 = C(2, 2, 2);
  return {
      (c111 - c122 + 1.0) * c212 + c112 * (c222 - c211),
      c222 + c121 * c212 - c112 * c221,
      -c211 + c121 * c212 - c112 * c221,
      (c111 - c122 - 1.0) * c221 + c121 * (c222 - c211),
  };
}

inline RicciCoefficients symmetrize(const RicciCoefficients& rho) {
  const double off = 0.5 * (rho(1, 2) + rho(2, 1));
  return {rho(1, 1), off, off, rho(2, 2)};
}

/// Eigenvalues of a symmetric 2x2 coefficient matrix, ascending.
inline std::array<double, 2> symmetric_eigenvalues(const RicciCoefficients& s) {
  const double mean = 0.5 * (s(1, 1) + s(2, 2));
  const double half_diff = 0.5 * (s(1, 1) - s(2, 2));
  const double radius = std::hypot(half_diff, s(1, 2));
  return {mean - radius, mean + radius};
}

/// Eigenvalues with |lambda| <= tol * max(1, |rho_s|_inf) count as zero.
inline Signature signature_of(const RicciCoefficients& rho_s, double tol = kDefaultTol) {
  const double threshold = tol * std::max(1.0, rho_s.max_abs());
  Signature sig;
  for (double lambda : symmetric_eigenvalues(rho_s)) {
    if (lambda > threshold) {
      ++sig.p;
    } else if (lambda < -threshold) {
      ++sig.q;
    }
  }
  sig.degenerate = sig.p + sig.q < 2;
  return sig;
}

/// The flip relations C_11^2 = C_12^1 = C_21^1 = C_22^2 = 0.
inline bool satisfies_flip_relations(const ChristoffelConstants& C, double tol = kDefaultTol) {
  return std::abs(C(1, 1, 2)) <= tol && std::abs(C(1, 2, 1)) <= tol && std::abs(C(2, 1, 1)) <= tol &&
         std::abs(C(2, 2, 2)) <= tol;
}

/// Diagonal Ricci tensor on the locus fixed by (x1, x2) -> (x1, -x2).
inline RicciCoefficients flip_locus_ricci(const ChristoffelConstants& C, double tol = kDefaultTol) {
  if (!satisfies_flip_relations(C, tol)) {
    throw GeometryError(ErrorKind::NotOnFlipLocus,
                        "C_11^2, C_12^1, C_21^1, C_22^2 must vanish");
  }
  const double d = C(1, 1, 1) - C(1, 2, 2);
  return {(d + 1.0) * C(2, 1, 2), 0.0, 0.0, (d - 1.0) * C(2, 2, 1)};
}

}  // namespace tbsurf

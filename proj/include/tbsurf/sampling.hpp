#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "tbsurf/group_actions.hpp"
#include "tbsurf/normal_forms.hpp"
#include "tbsurf/paracomplex.hpp"
#include "tbsurf/tensor_core.hpp"

namespace tbsurf {

/// Seeded generator for test inputs. Same seed, same sequence.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed = 0) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  ChristoffelConstants christoffel(double range = 2.0) {
    ChristoffelConstants c;
    for (double& x : c.v) x = uniform(-range, range);
    return c;
  }

  /// Base points in x1 in [0.5, 3], x2 in [-2, 2].
  Point point() { return Point(uniform(0.5, 3.0), uniform(-2.0, 2.0)); }

  std::vector<Point> points(std::size_t n) {
    std::vector<Point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(point());
    return out;
  }

  /// T_{a,b} with a in [-2, 2] and log b in [-log 4, log 4].
  AffineMap i_plus() {
    const double a = uniform(-2.0, 2.0);
    const double b = std::exp(uniform(-std::log(4.0), std::log(4.0)));
    return AffineMap::shear_scale(a, b);
  }

  AffineMap g_element() {
    const double m = std::exp(uniform(-1.0, 1.0));
    const double b = (uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * std::exp(uniform(-1.0, 1.0));
    return AffineMap::make(m, uniform(-2.0, 2.0), b, uniform(-2.0, 2.0));
  }

  AffineMap h_element() {
    const double m = std::exp(uniform(-1.0, 1.0));
    return AffineMap::make(m, 0.0, m, uniform(-2.0, 2.0));
  }

  Mobius sl2() {
    double a = 0.0;
    do a = uniform(-2.0, 2.0);
    while (std::abs(a) < 0.3);
    const double b = uniform(-2.0, 2.0);
    const double c = uniform(-2.0, 2.0);
    return {a, b, c, (1.0 + b * c) / a};
  }

  /// Random C whose symmetric Ricci has the requested signature class,
  /// with |det rho_s| bounded away from zero.
  ChristoffelConstants with_class(MetricClass cls, double min_det = 0.05) {
    for (;;) {
      ChristoffelConstants c = christoffel();
      if (cls == MetricClass::Null) {
        // rho_22 is affine in C_22^1 with slope C_11^1 - C_12^2 - 1; solve rho_22 = 0.
        const double slope = c(1, 1, 1) - c(1, 2, 2) - 1.0;
        if (std::abs(slope) < 0.2) continue;
        c(2, 2, 1) = -c(1, 2, 1) * (c(2, 2, 2) - c(2, 1, 1)) / slope;
        if (std::abs(c(2, 2, 1)) > 4.0) continue;
      }
      const RicciCoefficients r = symmetric_ricci(c);
      const double det = r(1, 1) * r(2, 2) - r(1, 2) * r(1, 2);
      if (std::abs(det) < min_det) continue;
      const bool null_row = std::abs(r(2, 2)) <= kDefaultTol * std::max(1.0, r.max_abs());
      switch (cls) {
        case MetricClass::Definite:
          if (det > 0.0) return c;
          break;
        case MetricClass::Lorentz:
          if (det < 0.0 && !null_row && std::abs(r(2, 2)) > 0.05) return c;
          break;
        case MetricClass::Null:
          if (null_row) return c;
          break;
      }
    }
  }

  /// Random C with non-degenerate rho_s, any class.
  ChristoffelConstants non_degenerate(double min_det = 0.05) {
    for (;;) {
      ChristoffelConstants c = christoffel();
      const RicciCoefficients r = symmetric_ricci(c);
      if (std::abs(r(1, 1) * r(2, 2) - r(1, 2) * r(1, 2)) >= min_det) return c;
    }
  }

  /// Random C on the flip-invariant slice C_11^2 = C_12^1 = C_21^1 = C_22^2 = 0,
  /// with non-degenerate rho_s.
  ChristoffelConstants flip_invariant(double min_det = 0.05) {
    for (;;) {
      ChristoffelConstants c = christoffel();
      c(1, 1, 2) = c(1, 2, 1) = c(2, 1, 1) = c(2, 2, 2) = 0.0;
      const RicciCoefficients r = symmetric_ricci(c);
      if (std::abs(r(1, 1) * r(2, 2) - r(1, 2) * r(1, 2)) >= min_det) return c;
    }
  }

  HyperNumber hyper(int unit_sign) { return {uniform(-2.0, 2.0), uniform(-2.0, 2.0), unit_sign}; }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace tbsurf

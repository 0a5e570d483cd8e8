#pragma once

#include <array>
#include <cstddef>

#include "tbsurf/tensor_core.hpp"

namespace tbsurf {

/// Polynomial vector field of total degree <= 2 in (x1, x2).
/// coef[k][n] multiplies monomial n of {1, x1, x2, x1^2, x1 x2, x2^2} in component k.
struct VectorFieldPoly {
  static constexpr std::size_t kMonomials = 6;
  std::array<std::array<double, kMonomials>, 2> coef{};

  static VectorFieldPoly basis(std::size_t n) {
    VectorFieldPoly f;
    f.coef[n / kMonomials][n % kMonomials] = 1.0;
    return f;
  }

  Vec2 operator()(const Vec2& x) const {
    Vec2 out{};
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& c = coef[k];
      out[k] = c[0] + c[1] * x[0] + c[2] * x[1] + c[3] * x[0] * x[0] + c[4] * x[0] * x[1] +
               c[5] * x[1] * x[1];
    }
    return out;
  }

  /// jac[k][l] = d X^k / d x^l.
  Mat2 jacobian(const Vec2& x) const {
    Mat2 out{};
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& c = coef[k];
      out[k][0] = c[1] + 2.0 * c[3] * x[0] + c[4] * x[1];
      out[k][1] = c[2] + c[4] * x[0] + 2.0 * c[5] * x[1];
    }
    return out;
  }

  /// hess(i, j, k) = d^2 X^k / dx^i dx^j (constant).
  Tensor222 hessian() const {
    Tensor222 h;
    for (int k = 1; k <= 2; ++k) {
      const auto& c = coef[static_cast<std::size_t>(k - 1)];
      h(1, 1, k) = 2.0 * c[3];
      h(1, 2, k) = c[4];
      h(2, 1, k) = c[4];
      h(2, 2, k) = 2.0 * c[5];
    }
    return h;
  }
};

}  // namespace tbsurf

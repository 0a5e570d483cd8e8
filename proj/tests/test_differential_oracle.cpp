#include <gtest/gtest.h>

#include "tbsurf/differential_oracle.hpp"
#include "tbsurf/normal_forms.hpp"
#include "tbsurf/sampling.hpp"

using namespace tbsurf;

namespace {

double max_abs(const Tensor2222& r) {
  double m = 0.0;
  for (double x : r.v) m = std::max(m, std::abs(x));
  return m;
}

double mat_diff(const Mat2& a, const Mat2& b) {
  double m = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

}  // namespace

TEST(IndexWeight, Table) {
  EXPECT_EQ(index_weight(1, 1, 1), 1);
  EXPECT_EQ(index_weight(2, 2, 1), -1);
  EXPECT_EQ(index_weight(1, 2, 2), 1);
  EXPECT_EQ(index_weight(2, 1, 2), 1);
  EXPECT_EQ(index_weight(1, 1, 2), 2);
  EXPECT_EQ(index_weight(2, 2, 2), 0);
  EXPECT_EQ(index_weight(1, 2, 1), 0);
  EXPECT_EQ(index_weight(2, 1, 1), 0);
}

TEST(Curvature, FlatConnectionIsFlat) {
  EXPECT_EQ(max_abs(curvature_at(flat_connection(), Point(1.0, 0.0))), 0.0);
}

TEST(Curvature, NullModelIsFlat) {
  Sampler s(61);
  for (int n = 0; n < 10; ++n) EXPECT_LE(max_abs(curvature_at(type_b_connection(c_zero()), s.point())), 1e-7);
}

TEST(Curvature, HyperbolicRicciAtBasePoint) {
  const RicciCoefficients r = ricci_fd_oracle(type_b_connection(c_plus()), Point(1.0, 0.0));
  EXPECT_LE(max_abs_diff(r, {-1, 0, 0, -1}), 1e-6);
}

TEST(Curvature, AntisymmetricInFirstPair) {
  Sampler s(62);
  for (int n = 0; n < 20; ++n) {
    const Tensor2222 r = curvature_at(type_b_connection(s.christoffel()), s.point());
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        for (int k = 1; k <= 2; ++k)
          for (int l = 1; l <= 2; ++l) EXPECT_LE(std::abs(r(i, j, k, l) + r(j, i, k, l)), 1e-10);
  }
}

TEST(Curvature, StencilMustStayInHalfPlane) {
  try {
    curvature_at(flat_connection(), Point(1e-6, 0.0));
    FAIL() << "expected DomainError";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainError);
  }
}

TEST(Pullback, IdentityReturnsConnection) {
  const ConnectionField f = type_b_connection(c_plus());
  const Vec2 x{1.3, 0.2};
  EXPECT_LE(max_abs_diff(pullback_connection_at(identity_map(), f, x), f.gamma(x)), 1e-15);
}

TEST(Pullback, SingularJacobianRejected) {
  SmoothMap collapse{"collapse", [](const Vec2& x) { return Vec2{x[0], 0.0}; },
                     [](const Vec2&) { return Mat2{{{1.0, 0.0}, {0.0, 0.0}}}; },
                     [](const Vec2&) { return Tensor222{}; }};
  try {
    pullback_connection_at(collapse, flat_connection(), {1.0, 0.0});
    FAIL() << "expected SingularJacobian";
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularJacobian);
  }
}

TEST(Pullback, UCarriesNullModelToFlat) {
  Sampler s(63);
  for (int n = 0; n < 10; ++n) {
    const Vec2 x{-s.uniform(0.3, 2.0), s.uniform(-2, 2)};  // U(x) lies in the half plane
    EXPECT_LE(pullback_connection_at(u_map(), type_b_connection(c_zero()), x).max_abs(), 1e-9);
  }
}

TEST(Pullback, AffineLiftIsConstantAndMatchesAct) {
  Sampler s(64);
  for (int n = 0; n < 20; ++n) {
    const ChristoffelConstants c = s.christoffel();
    const AffineMap t = s.i_plus();
    const ChristoffelConstants want = act(inverse(t), c);
    for (const Point& p : s.points(5)) {
      const Tensor222 got = p.x1() * pullback_connection_at(affine_lift(t), type_b_connection(c), p.coords());
      EXPECT_LE(max_abs_diff(got, want), 1e-8 * std::max(1.0, want.max_abs()));
    }
  }
}

TEST(WeightLaws, PhiClosedFormExamples) {
  const ChristoffelConstants c = c_plus();
  EXPECT_LE(max_abs_diff(phi_c_pullback_closed_form(0.0, c, 1.7), c), 1e-15);
  // The 111 slot (eps = 1) picks up (1 - c v)^-1.
  const double cc = 0.2, v = 2.0;
  const Tensor222 t = phi_c_pullback_closed_form(cc, c, v);
  EXPECT_NEAR(t(1, 1, 1), -2.0 + (c(1, 1, 1) + 2.0) / (1.0 - cc * v), 1e-15);
  EXPECT_THROW(phi_c_pullback_closed_form(0.5, c, 2.0), GeometryError);
}

TEST(WeightLaws, PhiMatchesOracle) {
  Sampler s(65);
  for (int n = 0; n < 50; ++n) {
    const ChristoffelConstants c = s.christoffel();
    const double cc = s.uniform(-0.3, 0.3);
    const Point p = s.point();
    const Tensor222 want = phi_c_pullback_closed_form(cc, c, p.x1());
    const Tensor222 got = p.x1() * pullback_connection_at(phi_c_map(cc), type_b_connection(c), p.coords());
    EXPECT_LE(max_abs_diff(got, want), 1e-7 * std::max(1.0, want.max_abs()));
  }
}

TEST(WeightLaws, UClosedFormExamples) {
  EXPECT_EQ(u_pullback_closed_form(c_zero(), 0.7).max_abs(), 0.0);
  const ChristoffelConstants c = c_plus();
  EXPECT_LE(max_abs_diff(u_pullback_closed_form(c, 1.0), c - c_zero()), 0.0);
  EXPECT_GT(max_abs_diff(u_pullback_closed_form(c, 1.0), u_pullback_closed_form(c, 2.0)), 0.1);
  EXPECT_THROW(u_pullback_closed_form(c, 0.0), GeometryError);
}

TEST(WeightLaws, UMatchesOracle) {
  Sampler s(66);
  for (int n = 0; n < 50; ++n) {
    const ChristoffelConstants c = s.christoffel();
    const double v = s.uniform(0.5, 3.0);
    const Tensor222 want = u_pullback_closed_form(c, v);
    const Tensor222 got = pullback_connection_at(u_map(), type_b_connection(c), {-1.0 / v, s.uniform(-2, 2)});
    EXPECT_LE(max_abs_diff(got, want), 1e-7 * std::max(1.0, want.max_abs()));
  }
}

TEST(Constancy, GroupLiftsPreserveTypeB) {
  Sampler s(67);
  for (int n = 0; n < 20; ++n) {
    const auto pts = s.points(5);
    EXPECT_TRUE(type_b_constancy_check(affine_lift(s.g_element()), s.christoffel(), pts));
  }
}

TEST(Constancy, PhiBreaksTypeBOffTheNullModel) {
  ChristoffelConstants c = c_plus();
  c(2, 2, 1) = 1.5;
  EXPECT_FALSE(type_b_constancy_check(phi_c_map(0.3), c, std::vector<Point>{{0.5, 0.0}, {1.0, 1.0}, {2.0, -1.0}}));
  EXPECT_TRUE(type_b_constancy_check(phi_c_map(0.3), c_zero(), std::vector<Point>{{0.5, 0.0}, {1.0, 1.0}, {2.0, -1.0}}));
  EXPECT_THROW(type_b_constancy_check(identity_map(), c, std::vector<Point>{{1.0, 0.0}}), GeometryError);
}

TEST(MetricPullback, PhiIsIsometryOfNullMetric) {
  Sampler s(69);
  const MetricField g0 = metric_catalog(MetricTag::GZero);
  for (int n = 0; n < 10; ++n) {
    const double cc = s.uniform(-0.3, 0.3);
    const Vec2 x{s.uniform(0.5, 2.5), s.uniform(-2, 2)};
    EXPECT_LE(mat_diff(pullback_metric_at(phi_c_map(cc), g0, x), g0.g(x)), 1e-8);
  }
}

TEST(MetricPullback, UFlattensNullMetric) {
  const MetricField g0 = metric_catalog(MetricTag::GZero);
  for (const Vec2 x : {Vec2{-0.5, 0.0}, Vec2{-2.0, 1.0}, Vec2{-1.0, -3.0}}) {
    const Mat2 g = pullback_metric_at(u_map(), g0, x);
    EXPECT_NEAR(g[0][0], 0.0, 1e-12);
    EXPECT_NEAR(g[1][1], 0.0, 1e-12);
    EXPECT_NEAR(g[0][1], 1.0, 1e-12);
    EXPECT_NEAR(g[1][0], 1.0, 1e-12);
  }
}

TEST(LieDerivative, AlgebraHIsAlwaysKilling) {
  Sampler s(70);
  VectorFieldPoly translate, dilate;
  translate.coef[1][0] = 1.0;
  dilate.coef[0][1] = 1.0;
  dilate.coef[1][2] = 1.0;
  for (int n = 0; n < 20; ++n) {
    const ConnectionField conn = type_b_connection(s.christoffel());
    const Point p = s.point();
    EXPECT_LE(lie_derivative_connection_at(translate, conn, p).max_abs(), 1e-8);
    EXPECT_LE(lie_derivative_connection_at(dilate, conn, p).max_abs(), 1e-8);
  }
}

TEST(LieDerivative, X1TranslationIsNotKilling) {
  VectorFieldPoly f;
  f.coef[0][0] = 1.0;
  EXPECT_GT(lie_derivative_connection_at(f, type_b_connection(c_plus()), Point(1.0, 0.0)).max_abs(), 0.1);
}

// Oracle: d/dt of the pulled-back connection along the flow of X.
TEST(LieDerivative, MatchesFlowDifferencing) {
  Sampler s(71);
  const double t = 1e-4;
  for (int n = 0; n < 10; ++n) {
    const ChristoffelConstants c = s.christoffel();
    const ConnectionField conn = type_b_connection(c);
    const Point p = s.point();
    // X = a x1 d1 + (b + e x1 + a x2) d2 has the affine flow below.
    const double a = s.uniform(-1, 1), b = s.uniform(-1, 1), e = s.uniform(-1, 1);
    VectorFieldPoly f;
    f.coef[0][1] = a;
    f.coef[1] = {b, e, a, 0, 0, 0};
    auto flow = [&](double tau) {
      // x1 -> e^{a tau} x1,  x2 -> e^{a tau} (x2 + e tau x1) + b (e^{a tau} - 1) / a
      const double ea = std::exp(a * tau);
      const double d = std::abs(a) < 1e-12 ? tau : (ea - 1.0) / a;
      return AffineMap::make(ea, e * tau * ea, ea, b * d);
    };
    const Tensor222 plus = pullback_connection_at(affine_lift(flow(t)), conn, p.coords());
    const Tensor222 minus = pullback_connection_at(affine_lift(flow(-t)), conn, p.coords());
    const Tensor222 fd = (1.0 / (2 * t)) * (plus - minus);
    EXPECT_LE(max_abs_diff(fd, lie_derivative_connection_at(f, conn, p)), 1e-6);
  }
}

TEST(Killing, ModelDimensions) {
  Sampler s(72);
  EXPECT_EQ(killing_dimension(c_plus(), s.points(12)), 3);
  EXPECT_EQ(killing_dimension(c_minus(), s.points(12)), 3);
}

TEST(Killing, GenericDimensionIsTwo) {
  Sampler s(73);
  int done = 0;
  while (done < 20) {
    const ChristoffelConstants c = s.non_degenerate();
    if (is_type_C(c)) continue;
    EXPECT_EQ(killing_dimension(c, s.points(12)), 2);
    ++done;
  }
}

TEST(Killing, NeedsEnoughPoints) {
  Sampler s(74);
  EXPECT_THROW(killing_dimension(c_plus(), s.points(5)), GeometryError);
}

TEST(Killing, NullSpaceHoldsAtHeldOutPoints) {
  Sampler s(75);
  for (int n = 0; n < 10; ++n) {
    const ChristoffelConstants c = n < 2 ? (n == 0 ? c_plus() : c_minus()) : s.non_degenerate();
    const KillingSolution sol = killing_solve(c, s.points(12));
    EXPECT_GE(sol.dimension, 2);
    EXPECT_GE(sol.gap, 10.0);
    const ConnectionField conn = type_b_connection(c);
    for (const VectorFieldPoly& f : sol.fields)
      for (const Point& p : s.points(5)) EXPECT_LE(lie_derivative_connection_at(f, conn, p).max_abs(), 1e-6);
  }
}

TEST(LeviCivita, CatalogMatchesKoszulFormula) {
  Sampler s(76);
  for (MetricTag tag : {MetricTag::GPlus, MetricTag::GMinus, MetricTag::GZero, MetricTag::Flat}) {
    const ConnectionField conn = tag == MetricTag::Flat ? flat_connection() : type_b_connection(levi_civita_catalog(tag));
    for (int n = 0; n < 5; ++n) {
      const Point p = s.point();
      EXPECT_LE(max_abs_diff(levi_civita_numeric(metric_catalog(tag), p), conn.gamma(p.coords())), 1e-7);
    }
  }
}

TEST(LeviCivita, CatalogTables) {
  ChristoffelConstants plus;
  plus(1, 1, 1) = plus(1, 2, 2) = plus(2, 1, 2) = -1.0;
  plus(2, 2, 1) = 1.0;
  EXPECT_EQ(c_plus(), plus);
  ChristoffelConstants minus = plus;
  minus(2, 2, 1) = -1.0;
  EXPECT_EQ(c_minus(), minus);
  EXPECT_EQ(c_zero()(1, 1, 1), -2.0);
  EXPECT_EQ(c_zero().max_abs(), 2.0);
  EXPECT_EQ(levi_civita_catalog(MetricTag::Flat).max_abs(), 0.0);
}

#include <gtest/gtest.h>

#include "tbsurf/differential_oracle.hpp"
#include "tbsurf/normal_forms.hpp"
#include "tbsurf/sampling.hpp"

using namespace tbsurf;

namespace {

void expect_class_form(const CanonicalForm& f) {
  const RicciCoefficients got = symmetric_ricci(f.canonical);
  const RicciCoefficients want = class_metric(f.metric_class);
  for (std::size_t n = 0; n < 4; ++n)
    EXPECT_NEAR(got.r[n], f.scalar * want.r[n], 1e-9 * std::max(1.0, std::abs(f.scalar)));
  EXPECT_TRUE(f.witness.in_I_plus(1e-15));
  if (f.metric_class == MetricClass::Null) {
    EXPECT_EQ(std::abs(f.scalar), 1.0);
  } else {
    EXPECT_NE(f.scalar, 0.0);
  }
}

ChristoffelConstants single(int i, int j, int k, double value) {
  ChristoffelConstants c;
  c(i, j, k) = value;
  return c;
}

}  // namespace

TEST(Normalize, HyperbolicModel) {
  const CanonicalForm f = normalize(c_plus());
  EXPECT_EQ(f.metric_class, MetricClass::Definite);
  EXPECT_DOUBLE_EQ(f.scalar, -1.0);
  EXPECT_EQ(max_abs_diff(f.witness, AffineMap::identity()), 0.0);
  EXPECT_EQ(f.canonical, c_plus());
}

TEST(Normalize, LorentzianModel) {
  const CanonicalForm f = normalize(c_minus());
  EXPECT_EQ(f.metric_class, MetricClass::Lorentz);
  EXPECT_DOUBLE_EQ(f.scalar, -1.0);
  EXPECT_EQ(max_abs_diff(f.witness, AffineMap::identity()), 0.0);
}

TEST(Normalize, NullExample) {
  const CanonicalForm f = normalize(single(2, 1, 1, 2.0));
  EXPECT_EQ(f.metric_class, MetricClass::Null);
  EXPECT_EQ(f.scalar, -1.0);
  EXPECT_EQ(max_abs_diff(f.witness, AffineMap::identity()), 0.0);
}

TEST(Normalize, DegenerateRejected) {
  for (const ChristoffelConstants& c : {ChristoffelConstants{}, c_zero()}) {
    try {
      normalize(c);
      FAIL() << "expected DegenerateRicci";
    } catch (const GeometryError& e) {
      EXPECT_EQ(e.kind(), ErrorKind::DegenerateRicci);
    }
  }
}

TEST(Normalize, ClassFormsForEveryClass) {
  Sampler s(81);
  for (MetricClass cls : {MetricClass::Definite, MetricClass::Lorentz, MetricClass::Null}) {
    for (int n = 0; n < 100; ++n) {
      const CanonicalForm f = normalize(s.with_class(cls));
      EXPECT_EQ(f.metric_class, cls);
      expect_class_form(f);
    }
  }
}

TEST(Normalize, WitnessCarriesInputToCanonical) {
  Sampler s(82);
  for (int n = 0; n < 100; ++n) {
    const ChristoffelConstants c = s.non_degenerate();
    const CanonicalForm f = normalize(c);
    EXPECT_EQ(max_abs_diff(act(f.witness, c), f.canonical), 0.0);
  }
}

TEST(Normalize, Idempotent) {
  Sampler s(83);
  for (int n = 0; n < 200; ++n) {
    const CanonicalForm f = normalize(s.non_degenerate());
    const CanonicalForm g = normalize(f.canonical);
    EXPECT_LE(max_abs_diff(g.witness, AffineMap::identity()), 1e-9);
    EXPECT_EQ(g.metric_class, f.metric_class);
    EXPECT_TRUE(close_scaled(g.scalar, f.scalar, 1e-9));
  }
}

TEST(Normalize, OrbitInvariant) {
  Sampler s(84);
  for (int n = 0; n < 200; ++n) {
    const ChristoffelConstants c = n % 4 == 0 ? s.with_class(MetricClass::Null) : s.non_degenerate();
    const CanonicalForm f = normalize(c), g = normalize(act(s.i_plus(), c));
    EXPECT_EQ(f.metric_class, g.metric_class);
    EXPECT_TRUE(canonical_equal(f, g, 1e-8));
    if (f.metric_class == MetricClass::Null) {
      EXPECT_EQ(f.scalar, g.scalar);
    }
  }
}

TEST(Normalize, OrbitOfHyperbolicModel) {
  Sampler s(85);
  for (int n = 0; n < 50; ++n) {
    const AffineMap t = s.i_plus();
    const CanonicalForm f = normalize(act(t, c_plus()));
    EXPECT_LE(max_abs_diff(f.canonical, c_plus()), 1e-9);
    // The witness undoes t.
    EXPECT_LE(max_abs_diff(compose(f.witness, t), AffineMap::identity()), 1e-9);
  }
}

TEST(CanonicalEqual, Examples) {
  const CanonicalForm f = normalize(c_plus());
  EXPECT_TRUE(canonical_equal(f, f));
  EXPECT_FALSE(canonical_equal(f, normalize(c_minus())));
  CanonicalForm g = f;
  g.canonical(2, 2, 1) += 2e-7;
  EXPECT_FALSE(canonical_equal(f, g, 1e-7));
}

TEST(IsEquivalent, Examples) {
  Sampler s(86);
  for (int n = 0; n < 50; ++n) {
    const ChristoffelConstants c = s.non_degenerate();
    EXPECT_TRUE(is_equivalent(c, c));
    EXPECT_TRUE(is_equivalent(c, act(s.i_plus(), c)));
  }
  EXPECT_FALSE(is_equivalent(c_plus(), c_minus()));
  EXPECT_THROW(is_equivalent(c_plus(), c_zero()), GeometryError);
}

TEST(IsEquivalent, GenericPairsDiffer) {
  Sampler s(87);
  for (int n = 0; n < 50; ++n) EXPECT_FALSE(is_equivalent(s.non_degenerate(), s.non_degenerate()));
}

TEST(IsEquivalent, NeverAcrossSignatures) {
  Sampler s(88);
  for (int n = 0; n < 100; ++n) {
    const ChristoffelConstants c1 = s.non_degenerate(), c2 = s.non_degenerate();
    const Signature a = signature_of(symmetric_ricci(c1)), b = signature_of(symmetric_ricci(c2));
    if (!(a == b)) {
      EXPECT_FALSE(is_equivalent(c1, c2));
    }
  }
}

TEST(IsEquivalent, FlipIsNotInIdentityComponent) {
  // A null-class C and its flip have opposite eps.
  const ChristoffelConstants c = single(2, 1, 1, 2.0);
  EXPECT_FALSE(is_equivalent(c, act(AffineMap::flip(), c)));
}

TEST(FixedPoints, ActionIsFree) {
  Sampler s(89);
  for (int n = 0; n < 100; ++n) {
    const ChristoffelConstants c = s.non_degenerate();
    for (int k = 0; k < 20; ++k) {
      const AffineMap t = s.i_plus();
      if (max_abs_diff(t, AffineMap::identity()) < 1e-3) continue;
      EXPECT_GT(max_abs_diff(act(t, c), c), kDefaultTol);
    }
  }
}

TEST(TypeC, Examples) {
  EXPECT_TRUE(is_type_C(c_plus()));
  EXPECT_TRUE(is_type_C(c_minus()));
  Sampler s(90);
  for (int n = 0; n < 20; ++n) {
    EXPECT_TRUE(is_type_C(act(s.i_plus(), c_minus())));
    EXPECT_TRUE(is_type_C(act(s.i_plus(), c_plus())));
  }
  ChristoffelConstants c = c_plus();
  c(1, 1, 1) = -0.9;
  EXPECT_FALSE(is_type_C(c));
  EXPECT_THROW(is_type_C(c_zero()), GeometryError);
}

// Rescaling x2 by b only rescales C_22^1 by 1/b^2, so this stays in the orbit of C+.
TEST(TypeC, RescaledC221StaysHyperbolic) {
  ChristoffelConstants c = c_plus();
  c(2, 2, 1) = 1.1;
  EXPECT_LE(max_abs_diff(act(AffineMap::shear_scale(0.0, std::sqrt(1.1)), c), c_plus()), 1e-15);
  EXPECT_TRUE(is_type_C(c));
}

TEST(TypeC, GenericIsNotTypeC) {
  Sampler s(91);
  for (int n = 0; n < 100; ++n) EXPECT_FALSE(is_type_C(s.non_degenerate()));
}

TEST(Trivialize, HyperbolicModel) {
  const Trivialization t = trivialize(c_plus());
  EXPECT_EQ(t.form.canonical, c_plus());
  EXPECT_EQ(max_abs_diff(t.fiber, AffineMap::identity()), 0.0);
}

// Draws with |rho_22| >= 0.5 keep the witness shear O(1); near rho_22 = 0 the
// reconstruction loses digits in proportion to the shear.
TEST(Trivialize, RoundTripWellConditioned) {
  Sampler s(92);
  int done = 0;
  while (done < 100) {
    const ChristoffelConstants c = s.non_degenerate();
    if (std::abs(symmetric_ricci(c)(2, 2)) < 0.5) continue;
    EXPECT_LE(max_abs_diff(reconstruct(trivialize(c)), c), 1e-9);
    ++done;
  }
}

TEST(Trivialize, Cocycle) {
  Sampler s(93);
  for (int n = 0; n < 50; ++n) {
    const ChristoffelConstants c = s.non_degenerate();
    const AffineMap t0 = s.i_plus();
    const Trivialization a = trivialize(c), b = trivialize(act(t0, c));
    EXPECT_TRUE(canonical_equal(a.form, b.form, 1e-8));
    // fiber(act(t0, C)) o t0 = fiber(C)
    const AffineMap expect = compose(b.fiber, t0);
    EXPECT_LE(max_abs_diff(expect, a.fiber), 1e-8 * std::max(1.0, std::abs(a.fiber.a)));
  }
}

TEST(Orbifold, FlipInvariantSlice) {
  Sampler s(94);
  for (int n = 0; n < 20; ++n) EXPECT_TRUE(on_orbifold_locus(s.flip_invariant()));
  EXPECT_TRUE(on_orbifold_locus(c_plus()));
  EXPECT_TRUE(on_orbifold_locus(c_minus()));
}

TEST(Orbifold, GenericIsOffLocus) {
  Sampler s(95);
  for (int n = 0; n < 20; ++n) EXPECT_FALSE(on_orbifold_locus(s.non_degenerate()));
}

TEST(Classify, DegenerateHasNoCanonicalForm) {
  Sampler s(96);
  const ClassificationReport rep = classify(c_zero(), s.points(12));
  EXPECT_TRUE(rep.signature.degenerate);
  EXPECT_FALSE(rep.canonical_form.has_value());
  EXPECT_FALSE(rep.killing_dimension.has_value());
  EXPECT_FALSE(rep.diagnostics.empty());
}

TEST(Classify, ReportInvariants) {
  Sampler s(97);
  for (int n = 0; n < 30; ++n) {
    const ChristoffelConstants c = n == 0 ? c_plus() : (n == 1 ? c_minus() : s.non_degenerate());
    const ClassificationReport rep = classify(c, s.points(12));
    ASSERT_TRUE(rep.canonical_form.has_value());
    ASSERT_TRUE(rep.killing_dimension.has_value());
    EXPECT_EQ(*rep.killing_dimension, rep.is_type_C ? 3 : 2);
    EXPECT_EQ(rep.is_type_C, n < 2);
  }
}

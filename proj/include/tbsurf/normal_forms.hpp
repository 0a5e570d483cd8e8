#pragma once

// Canonical representatives for the action of I+ = {(x1, x2) -> (x1, a x1 + b x2), b > 0}
// on Type B constants whose symmetric Ricci tensor is non-degenerate.
//
// Every such C is carried by a unique element of I+ to a C' with
//   rho_s(C') = lambda g+   (definite),
//   rho_s(C') = lambda g-   (Lorentzian, rho_s22 != 0), or
//   rho_s(C') = eps g0      (null, rho_s22 == 0, eps = +-1).

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tbsurf/differential_oracle.hpp"
#include "tbsurf/error.hpp"
#include "tbsurf/group_actions.hpp"
#include "tbsurf/tensor_core.hpp"

namespace tbsurf {

inline constexpr double kCanonicalTol = 1e-7;

enum class MetricClass { Definite, Lorentz, Null };

inline const char* to_string(MetricClass c) {
  switch (c) {
    case MetricClass::Definite: return "DEFINITE";
    case MetricClass::Lorentz: return "LORENTZ";
    case MetricClass::Null: return "NULL";
  }
  return "?";
}

/// Coefficient matrix of g+, g- or g0.
inline RicciCoefficients class_metric(MetricClass c) {
  switch (c) {
    case MetricClass::Definite: return {1.0, 0.0, 0.0, 1.0};
    case MetricClass::Lorentz: return {1.0, 0.0, 0.0, -1.0};
    case MetricClass::Null: return {0.0, 1.0, 1.0, 0.0};
  }
  return {};
}

struct CanonicalForm {
  ChristoffelConstants canonical;
  MetricClass metric_class = MetricClass::Definite;
  double scalar = 0.0;  // lambda, or eps for the null class
  AffineMap witness;    // element of I+ with act(witness, input) == canonical
};

inline RicciCoefficients symmetric_ricci(const ChristoffelConstants& C) { return symmetrize(ricci_type_b(C)); }

namespace detail {

inline void require_non_degenerate(const RicciCoefficients& rho_s, double tol) {
  if (signature_of(rho_s, tol).degenerate) {
    throw GeometryError(ErrorKind::DegenerateRicci, "symmetric Ricci tensor is degenerate");
  }
}

}  // namespace detail

/// Two-stage normalization: a shear T_{a,1}, then a scale T_{0,b}.
inline CanonicalForm normalize(const ChristoffelConstants& C, double tol = kDefaultTol) {
  const RicciCoefficients rho = symmetric_ricci(C);
  detail::require_non_degenerate(rho, tol);
  const double scale = std::max(1.0, rho.max_abs());
  const double r11 = rho(1, 1), r12 = rho(1, 2), r22 = rho(2, 2);

  CanonicalForm out;
  AffineMap shear, stretch;
  if (std::abs(r22) > tol * scale) {
    // Kill the 12-component, then balance |rho_11| = |rho_22|.
    const double a = r12 / r22;
    shear = AffineMap::shear_scale(a, 1.0);
    const double n11 = r11 - 2.0 * a * r12 + a * a * r22;  // == r11 - r12^2 / r22
    const double b = std::sqrt(std::abs(r22 / n11));
    stretch = AffineMap::shear_scale(0.0, b);
    out.metric_class = (n11 > 0.0) == (r22 > 0.0) ? MetricClass::Definite : MetricClass::Lorentz;
    out.scalar = n11;
  } else {
    // rho_22 vanishes: kill the 11-component, then scale the 12-component to +-1.
    const double a = r11 / (2.0 * r12);
    shear = AffineMap::shear_scale(a, 1.0);
    stretch = AffineMap::shear_scale(0.0, std::abs(r12));
    out.metric_class = MetricClass::Null;
    out.scalar = r12 > 0.0 ? 1.0 : -1.0;
  }
  out.witness = compose(stretch, shear);
  out.canonical = act(out.witness, C);
  return out;
}

/// Relative comparison: |x - y| <= tol * max(1, |x|, |y|).
inline bool close_scaled(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

inline bool canonical_equal(const CanonicalForm& f1, const CanonicalForm& f2, double tol = kCanonicalTol) {
  if (f1.metric_class != f2.metric_class) return false;
  if (!close_scaled(f1.scalar, f2.scalar, tol)) return false;
  for (std::size_t n = 0; n < 8; ++n) {
    if (!close_scaled(f1.canonical.v[n], f2.canonical.v[n], tol)) return false;
  }
  return true;
}

inline bool is_equivalent(const ChristoffelConstants& c1, const ChristoffelConstants& c2,
                          double tol = kDefaultTol, double canonical_tol = kCanonicalTol) {
  return canonical_equal(normalize(c1, tol), normalize(c2, tol), canonical_tol);
}

struct TypeCVerdict {
  bool is_type_c = false;
  std::string diagnostic;
};

/// Type C within Type B: the canonical form is the hyperbolic (C+) or
/// Lorentzian (C-) table with lambda = -1.
inline TypeCVerdict diagnose_type_C(const ChristoffelConstants& C, double tol = kDefaultTol,
                                    double canonical_tol = kCanonicalTol) {
  const CanonicalForm f = normalize(C, tol);
  const std::pair<ChristoffelConstants, MetricClass> models[] = {{c_plus(), MetricClass::Definite},
                                                                 {c_minus(), MetricClass::Lorentz}};
  for (const auto& [model, cls] : models) {
    bool same = true;
    for (std::size_t n = 0; n < 8; ++n) same = same && close_scaled(f.canonical.v[n], model.v[n], canonical_tol);
    if (!same) continue;
    if (f.metric_class != cls || !close_scaled(f.scalar, -1.0, canonical_tol)) {
      return {false, "canonical constants match a Type C table but lambda != -1"};
    }
    return {true, cls == MetricClass::Definite ? "hyperbolic plane" : "Lorentzian hyperbolic plane"};
  }
  return {false, ""};
}

inline bool is_type_C(const ChristoffelConstants& C, double tol = kDefaultTol, double canonical_tol = kCanonicalTol) {
  return diagnose_type_C(C, tol, canonical_tol).is_type_c;
}

/// Section-times-fiber coordinates of the trivial I+ bundle.
struct Trivialization {
  CanonicalForm form;
  AffineMap fiber;  // == form.witness
};

inline Trivialization trivialize(const ChristoffelConstants& C, double tol = kDefaultTol) {
  CanonicalForm f = normalize(C, tol);
  const AffineMap fiber = f.witness;
  return {std::move(f), fiber};
}

inline ChristoffelConstants reconstruct(const Trivialization& t) {
  return act(inverse(t.fiber), t.form.canonical);
}

/// C is I+-equivalent to its image under (x1, x2) -> (x1, -x2).
inline bool on_orbifold_locus(const ChristoffelConstants& C, double tol = kDefaultTol,
                              double canonical_tol = kCanonicalTol) {
  return is_equivalent(C, act(AffineMap::flip(), C), tol, canonical_tol);
}

struct ClassificationReport {
  RicciCoefficients ricci;
  RicciCoefficients sym_ricci;
  Signature signature;
  std::optional<CanonicalForm> canonical_form;
  bool is_type_C = false;
  std::optional<int> killing_dimension;
  std::optional<bool> on_orbifold_locus;
  std::vector<std::string> diagnostics;
};

/// Total on finite input: a degenerate rho_s yields a report without canonical form.
inline ClassificationReport classify(const ChristoffelConstants& C, std::span<const Point> killing_points,
                                     double tol = kDefaultTol, double canonical_tol = kCanonicalTol) {
  ClassificationReport rep;
  rep.ricci = ricci_type_b(C);
  rep.sym_ricci = symmetrize(rep.ricci);
  rep.signature = signature_of(rep.sym_ricci, tol);
  if (rep.signature.degenerate) {
    rep.diagnostics.emplace_back("symmetric Ricci tensor is degenerate; no normal form");
    return rep;
  }
  rep.canonical_form = normalize(C, tol);
  const TypeCVerdict verdict = diagnose_type_C(C, tol, canonical_tol);
  rep.is_type_C = verdict.is_type_c;
  if (!verdict.diagnostic.empty()) rep.diagnostics.push_back(verdict.diagnostic);
  rep.on_orbifold_locus = on_orbifold_locus(C, tol, canonical_tol);
  try {
    rep.killing_dimension = killing_dimension(C, killing_points);
  } catch (const GeometryError& e) {
    rep.diagnostics.emplace_back(e.what());
  }
  return rep;
}

}  // namespace tbsurf

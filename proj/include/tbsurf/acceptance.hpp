#pragma once

// Acceptance criteria as executable checks. Shared by the acceptance test
// binary and `tbsurf selftest`. Every tolerance below is fixed here.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tbsurf/differential_oracle.hpp"
#include "tbsurf/group_actions.hpp"
#include "tbsurf/normal_forms.hpp"
#include "tbsurf/paracomplex.hpp"
#include "tbsurf/records.hpp"
#include "tbsurf/sampling.hpp"
#include "tbsurf/tensor_core.hpp"

namespace tbsurf::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the CLI in-process: (arguments, stdin text, stdout text) -> exit code.
using CliRunner = std::function<int(const std::vector<std::string>&, const std::string&, std::string&)>;

struct Options {
  double canonical_tol = kCanonicalTol;
  std::uint64_t seed = 0;
  CliRunner cli;                 // required for criterion 11
  std::function<int()> selftest; // external `tbsurf selftest` run; absent when already inside selftest
};

namespace detail {

inline Sampler sampler_for(const Options& opts, int criterion) {
  return Sampler(opts.seed * 1000003ULL + static_cast<std::uint64_t>(criterion));
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace detail

inline CriterionResult golden_ricci_tables(const Options&) {
  const double e1 = max_abs_diff(ricci_type_b(c_plus()), RicciCoefficients(-1, 0, 0, -1));
  const double e2 = max_abs_diff(ricci_type_b(c_minus()), RicciCoefficients(-1, 0, 0, 1));
  const double e3 = max_abs_diff(ricci_type_b(c_zero()), RicciCoefficients(0, 0, 0, 0));
  const double worst = std::max({e1, e2, e3});
  return {1, "golden Ricci tables", worst <= 1e-12, "max error " + detail::fmt(worst) + " (tol 1e-12)"};
}

inline CriterionResult oracle_equivalence(const Options& opts) {
  Sampler s = detail::sampler_for(opts, 2);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const ChristoffelConstants c = s.christoffel();
    const RicciCoefficients closed = ricci_type_b(c);
    const ConnectionField field = type_b_connection(c);
    for (int k = 0; k < 5; ++k) {
      const Point p = s.point();
      RicciCoefficients fd = ricci_fd_oracle(field, p, 1e-5);
      for (double& x : fd.r) x *= p.x1() * p.x1();
      worst = std::max(worst, max_abs_diff(fd, closed));
    }
  }
  return {2, "finite-difference Ricci oracle", worst <= 1e-6,
          "500 samples, max error " + detail::fmt(worst) + " (tol 1e-6)"};
}

inline CriterionResult mobius_suite(const Options& opts) {
  Sampler s = detail::sampler_for(opts, 3);
  std::size_t failures = 0;
  std::ostringstream detail_text;
  for (int sign : {-1, 1}) {
    int checked = 0;
    while (checked < 200) {
      const Mobius A = s.sl2(), B = s.sl2();
      const HyperNumber z = s.hyper(sign);
      const HyperNumber bz_den = lft_denominator(B, z);
      if (std::abs(hyper_norm(bz_den)) < 0.1) continue;
      const HyperNumber bz = lft_apply(B, z);
      if (std::abs(hyper_norm(lft_denominator(A, bz))) < 0.1) continue;
      if (std::abs(hyper_norm(lft_denominator(matrix_product(A, B), z))) < 0.1) continue;
      if (!lft_compose_law_check(A, B, z, 1e-9)) ++failures;
      ++checked;
    }
  }
  detail_text << "composition failures " << failures << "/400";

  // Complex transformations preserve g+, para-complex ones preserve g-.
  double worst_iso = 0.0;
  for (int sign : {-1, 1}) {
    const MetricField g = metric_catalog(sign < 0 ? MetricTag::GPlus : MetricTag::GMinus);
    int checked = 0;
    while (checked < 10) {
      const Mobius A = s.sl2();
      const Point p = s.point();
      if (std::abs(hyper_norm(lft_denominator(A, to_hyper(p.coords(), sign)))) < 0.1) continue;
      const SmoothMap phi = lft_map(A, sign);
      const Mat2 pulled = pullback_metric_at(phi, g, p.coords());
      const Mat2 base = g.g(p.coords());
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          worst_iso = std::max(worst_iso, std::abs(pulled[i][j] - base[i][j]) / std::max(1.0, std::abs(base[i][j])));
      ++checked;
    }
  }
  detail_text << ", isometry error " << detail::fmt(worst_iso);

  double worst_fix = 0.0;
  for (double theta : {0.3, 1.0, 2.0})
    worst_fix = std::max(worst_fix, max_abs_diff(lft_apply(Mobius::rotation(theta), HyperNumber::unit(-1)),
                                                  HyperNumber::unit(-1)));
  for (double t : {0.5, 1.5})
    worst_fix = std::max(worst_fix,
                         max_abs_diff(lft_apply(Mobius::boost(t), HyperNumber::unit(1)), HyperNumber::unit(1)));
  detail_text << ", iota fixed-point error " << detail::fmt(worst_fix);

  const bool ok = failures == 0 && worst_iso <= 1e-8 && worst_fix <= 1e-10;
  return {3, "Mobius composition, isometry, fixed iota", ok, detail_text.str()};
}

inline CriterionResult normalization(const Options& opts) {
  Sampler s = detail::sampler_for(opts, 4);
  double worst_form = 0.0, worst_witness = 0.0;
  int class_mismatch = 0;
  struct Bucket {
    MetricClass cls;
    int trace_sign;  // +1 / -1 selects (2,0) / (0,2); 0 = any
  };
  const Bucket buckets[] = {{MetricClass::Definite, 1},
                            {MetricClass::Definite, -1},
                            {MetricClass::Lorentz, 0},
                            {MetricClass::Null, 0}};
  for (const Bucket& bucket : buckets) {
    int done = 0;
    while (done < 100) {
      const ChristoffelConstants c = s.with_class(bucket.cls);
      const RicciCoefficients r = symmetric_ricci(c);
      if (bucket.trace_sign != 0 && (r(1, 1) + r(2, 2)) * bucket.trace_sign < 0.0) continue;
      const CanonicalForm f = normalize(c);
      if (f.metric_class != bucket.cls) ++class_mismatch;
      const RicciCoefficients got = symmetric_ricci(f.canonical);
      const RicciCoefficients want = class_metric(f.metric_class);
      for (std::size_t n = 0; n < 4; ++n) {
        worst_form = std::max(worst_form,
                              std::abs(got.r[n] - f.scalar * want.r[n]) / std::max(1.0, std::abs(f.scalar)));
      }
      const CanonicalForm again = normalize(f.canonical);
      worst_witness = std::max(worst_witness, max_abs_diff(again.witness, AffineMap::identity()));
      if (again.metric_class != f.metric_class || !close_scaled(again.scalar, f.scalar, 1e-9)) ++class_mismatch;
      ++done;
    }
  }
  const bool ok = class_mismatch == 0 && worst_form <= 1e-8 && worst_witness <= 1e-9;
  return {4, "normalization to lambda g+/lambda g-/eps g0", ok,
          "400 samples, form error " + detail::fmt(worst_form) + " (tol 1e-8), idempotence witness error " +
              detail::fmt(worst_witness) + " (tol 1e-9), class mismatches " + std::to_string(class_mismatch)};
}

inline CriterionResult orbit_decision(const Options& opts) {
  Sampler s = detail::sampler_for(opts, 5);
  int false_negatives = 0, false_positives = 0;
  for (int n = 0; n < 50; ++n) {
    const ChristoffelConstants c = s.non_degenerate();
    const AffineMap t = s.i_plus();
    if (!is_equivalent(c, act(t, c), kDefaultTol, opts.canonical_tol)) ++false_negatives;
  }
  for (int n = 0; n < 50; ++n) {
    const ChristoffelConstants c1 = s.non_degenerate(), c2 = s.non_degenerate();
    if (is_equivalent(c1, c2, kDefaultTol, opts.canonical_tol)) ++false_positives;
  }
  return {5, "orbit equivalence decision", false_negatives == 0 && false_positives == 0,
          "orbit pairs rejected " + std::to_string(false_negatives) + "/50, generic pairs accepted " +
              std::to_string(false_positives) + "/50"};
}

inline CriterionResult psi_anchors(const Options& opts) {
  bool anchors = true;
  for (double eps : {-1.0, 1.0}) {
    const RicciCoefficients rho(0.0, eps, eps, 0.0);
    const auto [first, second] = psi_map(0.0, 1.0, rho);
    anchors = anchors && first == eps && second == 0.0 && psi_jacobian_det(0.0, 1.0, rho) == -2.0;
  }
  Sampler s = detail::sampler_for(opts, 6);
  double worst = 0.0;
  const double h = 1e-5;
  for (int n = 0; n < 50; ++n) {
    const double r11 = s.uniform(-2, 2), r12 = s.uniform(-2, 2), r22 = s.uniform(-2, 2);
    const RicciCoefficients rho(r11, r12, r12, r22);
    const double alpha = s.uniform(-2, 2), beta = s.uniform(0.25, 4);
    const auto pa = psi_map(alpha + h, beta, rho), ma = psi_map(alpha - h, beta, rho);
    const auto pb = psi_map(alpha, beta + h, rho), mb = psi_map(alpha, beta - h, rho);
    const double j11 = (pa.first - ma.first) / (2 * h), j12 = (pb.first - mb.first) / (2 * h);
    const double j21 = (pa.second - ma.second) / (2 * h), j22 = (pb.second - mb.second) / (2 * h);
    worst = std::max(worst, std::abs((j11 * j22 - j12 * j21) - psi_jacobian_det(alpha, beta, rho)));
  }
  return {6, "Psi anchors and Jacobian", anchors && worst <= 1e-6,
          std::string("anchors ") + (anchors ? "exact" : "WRONG") + ", finite-difference det error " +
              detail::fmt(worst) + " (tol 1e-6)"};
}

inline CriterionResult killing_dimensions(const Options& opts) {
  Sampler s = detail::sampler_for(opts, 7);
  std::ostringstream text;
  int resampled = 0;
  auto solve = [&](const ChristoffelConstants& c) -> KillingSolution {
    for (;;) {
      const std::vector<Point> pts = s.points(12);
      try {
        return killing_solve(c, pts);
      } catch (const GeometryError& e) {
        if (e.kind() != ErrorKind::IllConditioned) throw;
        ++resampled;
      }
    }
  };
  const int dim_plus = solve(c_plus()).dimension;
  const int dim_minus = solve(c_minus()).dimension;
  int wrong = 0, instances = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  while (instances < 20) {
    const ChristoffelConstants c = s.non_degenerate();
    if (is_type_C(c)) continue;
    const KillingSolution sol = solve(c);
    min_gap = std::min(min_gap, sol.gap);
    if (sol.dimension != 2) ++wrong;
    ++instances;
  }
  text << "C+ -> " << dim_plus << ", C- -> " << dim_minus << ", generic wrong " << wrong
       << "/20, min gap " << detail::fmt(min_gap) << ", resampled " << resampled;
  return {7, "affine Killing dimensions", dim_plus == 3 && dim_minus == 3 && wrong == 0, text.str()};
}

inline CriterionResult weight_laws(const Options& opts) {
  Sampler s = detail::sampler_for(opts, 8);
  double worst_phi = 0.0, worst_u = 0.0;
  for (int n = 0; n < 50; ++n) {
    const ChristoffelConstants c = s.christoffel();
    const double cc = s.uniform(-0.3, 0.3);
    const Point p(s.uniform(0.5, 3.0), s.uniform(-2.0, 2.0));
    const Tensor222 numeric = p.x1() * pullback_connection_at(phi_c_map(cc), type_b_connection(c), p.coords());
    const Tensor222 closed = phi_c_pullback_closed_form(cc, c, p.x1());
    worst_phi = std::max(worst_phi, max_abs_diff(numeric, closed) / std::max(1.0, closed.max_abs()));
  }
  for (int n = 0; n < 50; ++n) {
    const ChristoffelConstants c = s.christoffel();
    const double v = s.uniform(0.5, 3.0);
    const Vec2 preimage{-1.0 / v, s.uniform(-2.0, 2.0)};  // U(preimage) has x1 = v
    const Tensor222 numeric = pullback_connection_at(u_map(), type_b_connection(c), preimage);
    const Tensor222 closed = u_pullback_closed_form(c, v);
    worst_u = std::max(worst_u, max_abs_diff(numeric, closed) / std::max(1.0, closed.max_abs()));
  }
  int lift_failures = 0;
  for (int n = 0; n < 20; ++n) {
    const std::vector<Point> pts = s.points(5);
    if (!type_b_constancy_check(affine_lift(s.g_element()), s.christoffel(), pts)) ++lift_failures;
  }
  int phi_failures = 0;
  for (int n = 0; n < 20; ++n) {
    ChristoffelConstants c = s.non_degenerate();
    if (is_type_C(c)) continue;
    std::vector<Point> pts;
    for (int k = 0; k < 5; ++k) pts.emplace_back(s.uniform(0.5, 2.5), s.uniform(-2.0, 2.0));
    if (type_b_constancy_check(phi_c_map(0.3), c, pts)) ++phi_failures;
  }
  const bool ok = worst_phi <= 1e-7 && worst_u <= 1e-7 && lift_failures == 0 && phi_failures == 0;
  return {8, "pullback weight laws and Type B constancy", ok,
          "Phi_c error " + detail::fmt(worst_phi) + ", U error " + detail::fmt(worst_u) +
              " (tol 1e-7), G-lift failures " + std::to_string(lift_failures) + "/20, Phi_0.3 false positives " +
              std::to_string(phi_failures)};
}

inline CriterionResult orbifold_locus(const Options& opts) {
  Sampler s = detail::sampler_for(opts, 9);
  int slice_misses = 0, generic_hits = 0;
  double worst = 0.0;
  for (int n = 0; n < 20; ++n) {
    const ChristoffelConstants c = s.flip_invariant();
    if (!on_orbifold_locus(c, kDefaultTol, opts.canonical_tol)) ++slice_misses;
    worst = std::max(worst, max_abs_diff(flip_locus_ricci(c), ricci_type_b(c)));
  }
  for (const auto& c : {c_plus(), c_minus()}) {
    if (!on_orbifold_locus(c, kDefaultTol, opts.canonical_tol)) ++slice_misses;
    worst = std::max(worst, max_abs_diff(flip_locus_ricci(c), ricci_type_b(c)));
  }
  for (int n = 0; n < 20; ++n) {
    if (on_orbifold_locus(s.non_degenerate(), kDefaultTol, opts.canonical_tol)) ++generic_hits;
  }
  return {9, "orbifold locus", slice_misses == 0 && generic_hits == 0 && worst <= 1e-12,
          "slice misses " + std::to_string(slice_misses) + "/22, generic hits " + std::to_string(generic_hits) +
              "/20, flip Ricci error " + detail::fmt(worst) + " (tol 1e-12)"};
}

inline CriterionResult trivialization_round_trip(const Options& opts) {
  Sampler s = detail::sampler_for(opts, 10);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const ChristoffelConstants c = s.non_degenerate();
    worst = std::max(worst, max_abs_diff(reconstruct(trivialize(c)), c));
  }
  return {10, "trivialization round trip", worst <= 1e-9,
          "100 samples, reconstruction error " + detail::fmt(worst) + " (tol 1e-9)"};
}

inline std::string record_text(const ChristoffelConstants& c) { return to_json(ConnectionRecord{c, {}}).dump(); }

inline CriterionResult cli_contract(const Options& opts) {
  if (!opts.cli) return {11, "command-line contract", false, "no CLI runner supplied"};
  Sampler s = detail::sampler_for(opts, 11);
  std::ostringstream text;
  bool ok = true;

  std::string out;
  const std::string same = "[" + record_text(c_plus()) + "," + record_text(act(s.i_plus(), c_plus())) + "]";
  const int rc_same = opts.cli({"equivalent"}, same, out);
  const std::string distinct = "[" + record_text(c_plus()) + "," + record_text(c_minus()) + "]";
  const int rc_distinct = opts.cli({"equivalent"}, distinct, out);
  const std::string degenerate = "[" + record_text(c_plus()) + "," + record_text(ChristoffelConstants{}) + "]";
  const int rc_degenerate = opts.cli({"equivalent"}, degenerate, out);
  ok = ok && rc_same == 0 && rc_distinct == 1 && rc_degenerate == 4;
  text << "equivalent exits " << rc_same << "/" << rc_distinct << "/" << rc_degenerate << " (want 0/1/4)";

  // classify output re-parses to identical doubles and identical text.
  int mismatches = 0;
  for (int n = 0; n < 25; ++n) {
    const ChristoffelConstants c = n % 5 == 0 ? s.christoffel() : s.non_degenerate();
    if (opts.cli({"classify"}, record_text(c), out) != 0) {
      ++mismatches;
      continue;
    }
    const json first = json::parse(out);
    const ClassificationReport rep = report_from_json(first);
    const json second = report_to_json(rep);
    if (second.dump() != first.dump()) ++mismatches;
    double r0 = first.at("ricci").at(0).get<double>();
    if (std::memcmp(&r0, &rep.ricci.r[0], sizeof(double)) != 0) ++mismatches;
  }
  ok = ok && mismatches == 0;
  text << ", JSON round-trip mismatches " << mismatches << "/25";

  if (opts.selftest) {
    const int rc = opts.selftest();
    ok = ok && rc == 0;
    text << ", selftest exit " << rc;
  } else {
    text << ", selftest exit checked by caller";
  }
  return {11, "command-line contract", ok, text.str()};
}

inline std::vector<CriterionResult> run_all(const Options& opts) {
  return {golden_ricci_tables(opts), oracle_equivalence(opts), mobius_suite(opts), normalization(opts),
          orbit_decision(opts),      psi_anchors(opts),        killing_dimensions(opts), weight_laws(opts),
          orbifold_locus(opts),      trivialization_round_trip(opts), cli_contract(opts)};
}

inline bool print_table(const std::vector<CriterionResult>& results, std::ostream& os) {
  bool all = true;
  for (const auto& r : results) {
    os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  os << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
  return all;
}

}  // namespace tbsurf::acceptance

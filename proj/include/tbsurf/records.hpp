#pragma once

// JSON records for the command-line front end.
//   ConnectionRecord: {"c": [[[c111, c112], [c121, c122]], [[c211, c212], [c221, c222]]], "label": "..."}
//   ReportRecord:     signature, ricci, sym_ricci, canonical, is_type_C,
//                     killing_dimension, on_orbifold_locus, diagnostics

#include <cmath>
#include <optional>
#include <string>

#include <json.hpp>

#include "tbsurf/error.hpp"
#include "tbsurf/normal_forms.hpp"
#include "tbsurf/tensor_core.hpp"

namespace tbsurf {

using json = nlohmann::json;

struct ConnectionRecord {
  ChristoffelConstants c;
  std::optional<std::string> label;
};

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw GeometryError(ErrorKind::MalformedInput, what); }

inline const json& expect_array(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) malformed("field \"" + where + "\" must be an array");
  if (j.size() != n) {
    malformed("field \"" + where + "\" must have length " + std::to_string(n) + ", got " + std::to_string(j.size()));
  }
  return j;
}

}  // namespace detail

inline ConnectionRecord parse_connection_record(const json& j) {
  if (!j.is_object()) detail::malformed("connection record must be a JSON object");
  if (!j.contains("c")) detail::malformed("missing field \"c\"");
  ConnectionRecord rec;
  const json& c = detail::expect_array(j.at("c"), 2, "c");
  bool finite = true;
  for (int i = 0; i < 2; ++i) {
    const std::string wi = "c[" + std::to_string(i) + "]";
    const json& ci = detail::expect_array(c[static_cast<std::size_t>(i)], 2, wi);
    for (int jj = 0; jj < 2; ++jj) {
      const std::string wj = wi + "[" + std::to_string(jj) + "]";
      const json& cij = detail::expect_array(ci[static_cast<std::size_t>(jj)], 2, wj);
      for (int k = 0; k < 2; ++k) {
        const json& x = cij[static_cast<std::size_t>(k)];
        if (!x.is_number()) detail::malformed("field \"" + wj + "[" + std::to_string(k) + "]\" must be a number");
        const double value = x.get<double>();
        finite = finite && std::isfinite(value);
        rec.c(i + 1, jj + 1, k + 1) = value;
      }
    }
  }
  if (!finite) throw GeometryError(ErrorKind::NonFinite, "field \"c\" contains a non-finite number");
  if (j.contains("label")) {
    if (!j.at("label").is_string()) detail::malformed("field \"label\" must be a string");
    rec.label = j.at("label").get<std::string>();
  }
  return rec;
}

/// Parses JSON text. A numeric literal that overflows a double is reported as non-finite.
inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw GeometryError(ErrorKind::MalformedInput, std::string("invalid JSON: ") + e.what());
  } catch (const json::out_of_range& e) {
    if (e.id == 406) throw GeometryError(ErrorKind::NonFinite, e.what());
    throw GeometryError(ErrorKind::MalformedInput, e.what());
  }
}

inline json christoffel_to_json(const ChristoffelConstants& c) {
  json out = json::array();
  for (int i = 1; i <= 2; ++i) {
    json row = json::array();
    for (int j = 1; j <= 2; ++j) row.push_back(json::array({c(i, j, 1), c(i, j, 2)}));
    out.push_back(row);
  }
  return out;
}

inline json to_json(const ConnectionRecord& rec) {
  json out{{"c", christoffel_to_json(rec.c)}};
  if (rec.label) out["label"] = *rec.label;
  return out;
}

inline json signature_to_json(const Signature& s) {
  return {{"p", s.p}, {"q", s.q}, {"degenerate", s.degenerate}};
}

inline json ricci_to_json(const RicciCoefficients& r) { return json::array({r.r[0], r.r[1], r.r[2], r.r[3]}); }

inline json sym_ricci_to_json(const RicciCoefficients& s) { return json::array({s(1, 1), s(1, 2), s(2, 2)}); }

inline json canonical_to_json(const CanonicalForm& f) {
  return {{"class", to_string(f.metric_class)},
          {"scalar", f.scalar},
          {"c", christoffel_to_json(f.canonical)},
          {"witness", {{"a", f.witness.a}, {"b", f.witness.b}}}};
}

inline json report_to_json(const ClassificationReport& rep) {
  json out;
  out["signature"] = signature_to_json(rep.signature);
  out["ricci"] = ricci_to_json(rep.ricci);
  out["sym_ricci"] = sym_ricci_to_json(rep.sym_ricci);
  out["canonical"] = rep.canonical_form ? canonical_to_json(*rep.canonical_form) : json(nullptr);
  out["is_type_C"] = rep.is_type_C;
  out["killing_dimension"] = rep.killing_dimension ? json(*rep.killing_dimension) : json(nullptr);
  out["on_orbifold_locus"] = rep.on_orbifold_locus ? json(*rep.on_orbifold_locus) : json(nullptr);
  out["diagnostics"] = rep.diagnostics;
  return out;
}

inline MetricClass metric_class_from_string(const std::string& s) {
  if (s == "DEFINITE") return MetricClass::Definite;
  if (s == "LORENTZ") return MetricClass::Lorentz;
  if (s == "NULL") return MetricClass::Null;
  detail::malformed("unknown class \"" + s + "\"");
}

/// Inverse of report_to_json (used for round-trip checks and by consumers).
inline ClassificationReport report_from_json(const json& j) {
  ClassificationReport rep;
  rep.signature = {j.at("signature").at("p").get<int>(), j.at("signature").at("q").get<int>(),
                   j.at("signature").at("degenerate").get<bool>()};
  for (std::size_t n = 0; n < 4; ++n) rep.ricci.r[n] = j.at("ricci").at(n).get<double>();
  const json& s = j.at("sym_ricci");
  rep.sym_ricci = {s.at(0).get<double>(), s.at(1).get<double>(), s.at(1).get<double>(), s.at(2).get<double>()};
  if (!j.at("canonical").is_null()) {
    const json& c = j.at("canonical");
    CanonicalForm f;
    f.metric_class = metric_class_from_string(c.at("class").get<std::string>());
    f.scalar = c.at("scalar").get<double>();
    f.canonical = parse_connection_record(json{{"c", c.at("c")}}).c;
    f.witness = AffineMap::shear_scale(c.at("witness").at("a").get<double>(), c.at("witness").at("b").get<double>());
    rep.canonical_form = f;
  }
  rep.is_type_C = j.at("is_type_C").get<bool>();
  if (!j.at("killing_dimension").is_null()) rep.killing_dimension = j.at("killing_dimension").get<int>();
  if (!j.at("on_orbifold_locus").is_null()) rep.on_orbifold_locus = j.at("on_orbifold_locus").get<bool>();
  rep.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  return rep;
}

}  // namespace tbsurf

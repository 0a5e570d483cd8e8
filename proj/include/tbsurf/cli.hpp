#pragma once

// `tbsurf` command-line front end. Kept in a header so tests can drive it in-process.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "tbsurf/acceptance.hpp"
#include "tbsurf/normal_forms.hpp"
#include "tbsurf/records.hpp"
#include "tbsurf/sampling.hpp"

namespace tbsurf::cli {

enum ExitCode : int {
  kOk = 0,
  kInequivalent = 1,
  kMalformed = 2,
  kNonFinite = 3,
  kDegenerate = 4,
  kIllConditioned = 5,
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFinite:
      return kNonFinite;
    case ErrorKind::DegenerateRicci:
      return kDegenerate;
    case ErrorKind::IllConditioned:
      return kIllConditioned;
    default:
      return kMalformed;
  }
}

namespace detail {

inline std::string read_source(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path);
  if (!f) throw GeometryError(ErrorKind::MalformedInput, "cannot open \"" + path + "\"");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline void print_table_row(std::ostream& out, const std::string& key, const json& value) {
  out << std::left << std::setw(20) << key << ' ' << value.dump() << '\n';
}

inline void emit(std::ostream& out, const json& j, const std::string& format) {
  if (format == "table" && j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) print_table_row(out, it.key(), it.value());
  } else {
    out << j.dump() << '\n';
  }
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classify and normalize Type B affine connections on the half plane"};
  app.require_subcommand(1);

  double tol = kDefaultTol;
  std::uint64_t seed = 0;
  std::string format = "json";
  CLI::Option* tol_opt = app.add_option("--tol", tol, "signature tolerance (selftest: canonical tolerance)");
  app.add_option("--seed", seed, "seed for sampled points");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));

  std::string file;
  auto* ricci = app.add_subcommand("ricci", "Ricci tensor and its symmetric part");
  ricci->add_option("--file", file, "input record (default stdin)");
  auto* classify_cmd = app.add_subcommand("classify", "full classification report");
  classify_cmd->add_option("--file", file, "input record (default stdin)");
  auto* normalize_cmd = app.add_subcommand("normalize", "canonical representative and witness");
  normalize_cmd->add_option("--file", file, "input record (default stdin)");

  std::string file_a, file_b;
  auto* equivalent = app.add_subcommand("equivalent", "decide I+-equivalence of two records");
  equivalent->add_option("--a", file_a, "first record");
  equivalent->add_option("--b", file_b, "second record");
  equivalent->add_option("--file", file, "two-element array of records (default stdin)");

  std::size_t n_points = 12;
  auto* killing = app.add_subcommand("killing-dim", "dimension of the affine Killing algebra");
  killing->add_option("--file", file, "input record (default stdin)");
  killing->add_option("--points", n_points, "number of sample points");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");

  for (CLI::App* sub : {ricci, classify_cmd, normalize_cmd, equivalent, killing, selftest}) sub->fallthrough();

  std::vector<std::string> argv_store;
  argv_store.emplace_back("tbsurf");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }

  auto load_record = [&](const std::string& path) { return parse_connection_record(parse_json_text(detail::read_source(path, in))); };
  auto with_label = [](json j, const ConnectionRecord& rec) {
    if (rec.label) j["label"] = *rec.label;
    return j;
  };

  try {
    if (ricci->parsed()) {
      const ConnectionRecord rec = load_record(file);
      const RicciCoefficients r = ricci_type_b(rec.c);
      detail::emit(out, with_label({{"ricci", ricci_to_json(r)}, {"sym_ricci", sym_ricci_to_json(symmetrize(r))}}, rec),
                   format);
      return kOk;
    }
    if (classify_cmd->parsed()) {
      const ConnectionRecord rec = load_record(file);
      const std::vector<Point> pts = Sampler(seed).points(12);
      const ClassificationReport rep = classify(rec.c, pts, tol);
      detail::emit(out, with_label(report_to_json(rep), rec), format);
      return kOk;
    }
    if (normalize_cmd->parsed()) {
      const ConnectionRecord rec = load_record(file);
      detail::emit(out, with_label(canonical_to_json(normalize(rec.c, tol)), rec), format);
      return kOk;
    }
    if (equivalent->parsed()) {
      ChristoffelConstants c1, c2;
      if (!file_a.empty() || !file_b.empty()) {
        if (file_a.empty() || file_b.empty()) throw GeometryError(ErrorKind::MalformedInput, "--a and --b go together");
        c1 = load_record(file_a).c;
        c2 = load_record(file_b).c;
      } else {
        const json pair = parse_json_text(detail::read_source(file, in));
        if (!pair.is_array() || pair.size() != 2)
          throw GeometryError(ErrorKind::MalformedInput, "expected a two-element array of records");
        c1 = parse_connection_record(pair[0]).c;
        c2 = parse_connection_record(pair[1]).c;
      }
      const bool same = is_equivalent(c1, c2, tol);
      out << (same ? "equivalent" : "inequivalent") << '\n';
      return same ? kOk : kInequivalent;
    }
    if (killing->parsed()) {
      const ConnectionRecord rec = load_record(file);
      out << killing_dimension(rec.c, Sampler(seed).points(n_points)) << '\n';
      return kOk;
    }
    if (selftest->parsed()) {
      acceptance::Options opts;
      opts.canonical_tol = tol_opt->count() > 0 ? tol : kCanonicalTol;
      opts.seed = seed;
      opts.cli = [](const std::vector<std::string>& a, const std::string& input, std::string& output) {
        std::istringstream sin(input);
        std::ostringstream sout, serr;
        const int rc = run_cli(a, sin, sout, serr);
        output = sout.str();
        return rc;
      };
      return acceptance::print_table(acceptance::run_all(opts), out) ? kOk : 1;
    }
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kMalformed;
  }
  return kMalformed;
}

}  // namespace tbsurf::cli

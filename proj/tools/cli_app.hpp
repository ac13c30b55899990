#pragma once

#include "kummer/json.hpp"
#include "kummer/kummer.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace kummer::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kVacuous = 3 };

namespace detail {

inline std::vector<Integer> parse_vector(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw DomainError("empty coordinate in vector '" + text + "'");
    item = item.substr(first, last - first + 1);
    try {
      out.emplace_back(item);
    } catch (const std::exception&) {
      throw DomainError("bad coordinate '" + item + "'");
    }
  }
  if (out.size() != 7) throw DomainError("vector needs 7 coordinates (e1,f1,e2,f2,e3,f3,delta), got " + std::to_string(out.size()));
  return out;
}

inline void require_invariant_n(int n) {
  if (n < 2) throw DomainError("n must be at least 2 for invariant commands");
}

inline bool is_class(const json& j);

inline std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s = "(";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? "," : "") + scalar_text(j[i]);
    return s + ")";
  }
  if (is_class(j))
    return "(" + scalar_text(j["n"]) + "," + scalar_text(j["d"]) + "," + scalar_text(j["b"]) + ")";
  return j.dump();
}

inline bool is_class(const json& j) {
  return j.is_object() && j.size() == 3 && j.contains("n") && j.contains("d") && j.contains("b");
}

inline bool flat(const json& j) {
  if (j.is_object()) return is_class(j);
  if (j.is_array()) return std::all_of(j.begin(), j.end(), [](const json& x) { return flat(x); });
  return true;
}

inline void render(std::ostream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    std::size_t width = 0;
    for (const auto& [k, v] : j.items()) width = std::max(width, k.size());
    for (const auto& [k, v] : j.items()) {
      if (flat(v)) {
        os << pad << std::left << std::setw(static_cast<int>(width)) << k << "  " << scalar_text(v) << '\n';
      } else {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (flat(x)) {
        os << pad << scalar_text(x) << '\n';
      } else {
        render(os, x, indent + 2);
        os << '\n';
      }
    }
  } else {
    os << pad << scalar_text(j) << '\n';
  }
}

}  // namespace detail

inline json poltype_command(int n, std::optional<int> d) {
  if (n < 2) throw DomainError("n must be at least 2 for polarization types");
  if (d) {
    if (!admissible(n, *d)) throw DomainError("d^2 does not divide n+1");
    return {{"n", n}, {"d", *d}, {"poltype", io::of(kummer_fibration_poltype(n, *d))}};
  }
  json rows = json::array();
  for (int dd : admissible_divisibilities(n)) rows.push_back({{"d", dd}, {"poltype", io::of(kummer_fibration_poltype(n, dd))}});
  return {{"n", n}, {"rows", rows}};
}

inline json classify_command(int n, const std::vector<Integer>& coords) {
  detail::require_invariant_n(n);
  const PrimEmbedding emb = canonical_embedding(n);
  const LatticeVector alpha(emb.source(), coords);
  require_primitive_isotropic(alpha);
  const HLattice h = h_lattice(alpha, emb);
  const InvariantClass cls = theta(alpha, emb);
  return {{"n", n},
          {"vector", io::of(alpha)},
          {"d", cls.d},
          {"b", io::of(h.b)},
          {"invariant", io::of(cls)},
          {"h_gram", io::of(h.gram)},
          {"poltype", io::of(kummer_fibration_poltype(n, cls.d))}};
}

inline json enumerate_command(int n, int bound, std::optional<int> d) {
  detail::require_invariant_n(n);
  const EnumerationConfig cfg{n, bound, d};
  const PrimEmbedding emb = canonical_embedding(n);
  json classes = json::array();
  std::map<InvariantClass, std::int64_t> census;
  for (const auto& x : enumerate_isotropic_coords(cfg)) {
    const LatticeVector alpha = to_vector(emb.source(), x);
    const InvariantClass cls = theta(alpha, emb);
    ++census[cls];
    classes.push_back({{"vector", io::of(alpha)}, {"invariant", io::of(cls)}});
  }
  json rows = json::array();
  for (const auto& [cls, k] : census) rows.push_back({{"d", cls.d}, {"b", cls.b}, {"count", k}});
  json out = {{"n", n}, {"bound", bound}, {"count", classes.size()}, {"classes", classes}, {"census", rows}};
  out["d_filter"] = d ? json(*d) : json(nullptr);
  return out;
}

inline json witness_command(int n, int d, int b) {
  detail::require_invariant_n(n);
  const BmWitness w = bm_witness(n, d, b);
  const InvariantClass expected{n, d, normalize_residue(b, d)};
  return {{"n", n},
          {"d", d},
          {"b", b},
          {"s", io::of(w.s)},
          {"v", io::of(w.v)},
          {"alpha", io::of(w.alpha)},
          {"v_square", io::of(w.v_square)},
          {"v_square_ok", w.v_square == 2 * n + 2},
          {"alpha_divisibility", io::of(w.alpha_divisibility)},
          {"divisibility_ok", w.alpha_divisibility == d},
          {"integrality_ok", w.integrality},
          {"invariant", io::of(w.invariant)},
          {"invariant_ok", w.invariant == expected},
          {"poltype", io::of(w.poltype)}};
}

struct VerifyOutcome {
  json body;
  int code = kOk;
};

inline VerifyOutcome verify_command(int n, const std::string& suite, int bound, std::optional<int> d) {
  detail::require_invariant_n(n);
  if (suite != "lemmas" && suite != "faithful" && suite != "surjective" && suite != "all")
    throw DomainError("unknown suite '" + suite + "'");
  if (d && !admissible(n, *d)) throw DomainError("d^2 does not divide n+1");
  const EnumerationConfig cfg{n, bound, d};
  std::vector<Report> reports;
  if (suite == "lemmas" || suite == "all") reports.push_back(verify_lemmas(cfg));
  if (suite == "faithful" || suite == "all") reports.push_back(verify_faithful(cfg));
  if (suite == "surjective" || suite == "all") {
    if (d) reports.push_back(verify_surjective(n, *d));
    else
      for (int dd : admissible_divisibilities(n)) reports.push_back(verify_surjective(n, dd));
  }
  bool vacuous = false, failed = false;
  json arr = json::array();
  for (const auto& r : reports) {
    vacuous = vacuous || r.vacuous();
    failed = failed || !r.failures.empty();
    arr.push_back(io::of(r));
  }
  VerifyOutcome out;
  out.body = {{"n", n}, {"suite", suite}, {"bound", bound}, {"passed", !vacuous && !failed}, {"reports", arr}};
  out.code = vacuous ? kVacuous : (failed ? kFailed : kOk);
  return out;
}

inline json embed_command(int n) {
  const PrimEmbedding emb = canonical_embedding(n);
  bool orthogonal = true;
  for (std::size_t j = 0; j < emb.source()->rank(); ++j)
    orthogonal = orthogonal && pair(emb.apply(LatticeVector::basis(emb.source(), j)), emb.v()) == 0;
  return {{"n", n},
          {"source", io::of(*emb.source())},
          {"target", io::of(*emb.target())},
          {"matrix", io::of(emb.matrix())},
          {"v", io::of(emb.v())},
          {"v_square", io::of(norm(emb.v()))},
          {"v_square_ok", norm(emb.v()) == 2 * n + 2},
          {"image_orthogonal_to_v", orthogonal},
          {"image_saturated", emb.image_saturated()},
          {"v_spans_complement", emb.v_spans_complement()}};
}

/// Parses argv, runs one subcommand, writes JSON (or a table with --human) to out.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monodromy invariants and polarization types for generalized Kummer lattices", "kummer"};
  app.require_subcommand(1);
  bool human = false;
  int n = 0, bound = -1, b = 0, d_value = 0;
  std::string vector_text, suite = "all";
  app.add_flag("--human", human, "Render a table instead of JSON");

  auto* poltype = app.add_subcommand("poltype", "Polarization type of the fibrations for each admissible d");
  auto* classify = app.add_subcommand("classify", "Invariant of a primitive isotropic vector");
  auto* enumerate = app.add_subcommand("enumerate", "Primitive isotropic classes with bounded coordinates");
  auto* witness = app.add_subcommand("witness", "Mukai-vector witness for a class (n, d, b)");
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  auto* embed = app.add_subcommand("embed", "The canonical embedding into the Mukai lattice");
  std::vector<CLI::Option*> d_opts;
  for (auto* sub : {poltype, classify, enumerate, witness, verify, embed}) {
    sub->fallthrough();
    sub->add_option("--n", n, "Dimension parameter n")->required();
  }
  d_opts.push_back(poltype->add_option("--d", d_value, "Divisibility"));
  classify->add_option("--vector", vector_text, "Coordinates e1,f1,e2,f2,e3,f3,delta")->required();
  enumerate->add_option("--bound", bound, "Maximal absolute coordinate");
  d_opts.push_back(enumerate->add_option("--d", d_value, "Keep only this divisibility"));
  witness->add_option("--d", d_value, "Divisibility")->required();
  witness->add_option("--b", b, "Residue b, coprime to d")->required();
  verify->add_option("--suite", suite, "lemmas, faithful, surjective or all");
  verify->add_option("--bound", bound, "Maximal absolute coordinate");
  d_opts.push_back(verify->add_option("--d", d_value, "Restrict to one divisibility"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  auto optional_d = [&]() -> std::optional<int> {
    for (auto* o : d_opts)
      if (o->count() > 0) return d_value;
    return std::nullopt;
  };

  json body;
  int code = kOk;
  try {
    if (*poltype) body = poltype_command(n, optional_d());
    else if (*classify) body = classify_command(n, detail::parse_vector(vector_text));
    else if (*enumerate) body = enumerate_command(n, bound >= 0 ? bound : default_bound(std::max(n, 1)), optional_d());
    else if (*witness) body = witness_command(n, d_value, b);
    else if (*embed) body = embed_command(n);
    else if (*verify) {
      detail::require_invariant_n(n);
      VerifyOutcome o = verify_command(n, suite, bound >= 0 ? bound : default_bound(n), optional_d());
      body = std::move(o.body);
      code = o.code;
      if (code == kVacuous) err << "no classes at bound " << body["bound"] << '\n';
      else if (code == kFailed) err << "verification failures reported\n";
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailed;
  }
  if (human) detail::render(out, body, 0);
  else out << body.dump(2) << '\n';
  return code;
}

}  // namespace kummer::cli

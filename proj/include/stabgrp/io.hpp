#pragma once
// JSON encoding of library objects and decoding of job files. Objects use
// std::map keys, so dump() is canonical: parse -> dump is byte-identical.

#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabgrp/braidvk.hpp"
#include "stabgrp/diagram.hpp"
#include "stabgrp/homology.hpp"
#include "stabgrp/tbraid.hpp"

namespace stab {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

// Integers that fit in 64 bits are numbers; larger ones are decimal strings.
inline json int_json(const Int& v) {
  if (v >= Int(std::numeric_limits<long long>::min()) && v <= Int(std::numeric_limits<long long>::max()))
    return static_cast<long long>(v);
  return v.str();
}

inline json vec_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(int_json(x));
  return a;
}

inline json vecs_json(const std::vector<IntVec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec_json(v));
  return a;
}

inline json params_json(const std::map<std::string, int>& params) {
  json o = json::object();
  for (const auto& [k, v] : params) o[k] = v;
  return o;
}

inline json invariants_json(const InvariantFactors& f) {
  json a = json::array();
  for (const auto& x : f.factors) a.push_back(int_json(x));
  return {{"factors", a}, {"group", f.to_string()}};
}

inline json power_json(const InvariantFactors& f, long long mult) {
  return {{"factor", invariants_json(f)},
          {"multiplicity", mult},
          {"group", "(" + f.to_string() + ")^" + std::to_string(mult)}};
}

inline json word_json(const Word& w) { return json(w); }

inline json element_json(const BTildeElem& g) {
  json pi = json::array();
  for (int x : g.pi) pi.push_back(x + 1);
  return {{"n", g.pi.size()}, {"pi", pi}, {"alpha", g.t.alpha}, {"beta", g.t.beta}, {"eps", g.t.eps}};
}

inline json verdict_json(const CommutatorVerdict& v) {
  return {{"eta_first_in_kernel", v.eta_first_in_kernel},
          {"eta_second_in_kernel", v.eta_second_in_kernel},
          {"order", v.order()},
          {"group", v.name()}};
}

inline json lambda_report_json(const LambdaReport& R) {
  json assignment = json::array();
  for (const auto& e : R.assignment)
    assignment.push_back({{"edge", e.edge}, {"kind", edge_kind_name(e.kind)}, {"i", e.i}, {"j", e.j},
                          {"copy", e.copy}, {"value", vec_json(e.value)}});
  json j = {{"template", template_name(R.tmpl)},
            {"params", params_json(R.params)},
            {"n", R.n},
            {"lambda", vecs_json(R.lambda)},
            {"kernel_forms", R.kernel_forms},
            {"assignment", assignment},
            {"ab", power_json(R.ab_factor, R.multiplicity)},
            {"commutator", verdict_json(R.commutator)},
            {"witness_agrees", R.witness_agrees},
            {"property_star", R.property_star},
            {"generic_printed_agree", R.generic_printed_agree},
            {"discrepancies", R.discrepancies},
            {"twisting_integers_exist", R.twisting_integers_exist},
            {"review_flags", R.review_flags}};
  j["corner_redundant"] = R.corner_redundant ? json(*R.corner_redundant) : json(nullptr);
  return j;
}

inline json surface_json(const SurfaceData& S) {
  json j = {{"name", S.name},
            {"variant", S.variant},
            {"params", params_json(S.params)},
            {"basis", S.basis},
            {"rows", vecs_json(S.rows)},
            {"pairing", S.pairing},
            {"full_basis", S.full_basis},
            {"n", S.n},
            {"conjectural", S.conjectural},
            {"provenance", S.provenance}};
  if (S.form) {
    json f = json::array();
    for (std::size_t r = 0; r < S.form->rows(); ++r) f.push_back(vec_json(S.form->row(r)));
    j["form"] = f;
  } else {
    j["form"] = nullptr;
  }
  j["k_row"] = S.k_row ? vec_json(*S.k_row) : json(nullptr);
  j["diagram_template"] = S.diagram_template ? json(template_name(*S.diagram_template)) : json(nullptr);
  return j;
}

inline json homology_json(const SurfaceData& S, const LambdaData& L) {
  return {{"source", S.pairing ? "pairing" : "generators"},
          {"rows", vecs_json(L.generators)},
          {"lambda", vecs_json(L.hnf)},
          {"ab", power_json(L.quotient, S.n - 1)},
          {"conjectural", S.conjectural}};
}

inline json galois_json(const GaloisPrediction& g) {
  json j = {{"available", g.available}, {"group", g.description}, {"conjectural", true}};
  if (g.available) {
    j["divisibility"] = int_json(g.s);
    j["exponent"] = g.exponent;
    j["exact_divisibility"] = g.exact_divisibility;
  }
  return j;
}

inline json parity_json(const Conjecture58Prediction& c) {
  json j = {{"available", c.available}, {"group", c.description()}, {"conjectural", true}};
  if (c.available) {
    j["gamma1"] = c.gamma1;
    j["gamma2"] = c.gamma2;
    j["order"] = c.order();
  }
  return j;
}

inline json presentation_json(const TaggedPresentation& P) {
  json rels = json::array();
  for (const auto& r : P.relations)
    rels.push_back({{"kind", kind_name(r.kind)}, {"origin", r.origin}, {"word", word_json(r.relator)},
                    {"text", word_to_string(r.relator)}});
  return {{"generators", P.presentation.generators}, {"relators", rels}};
}

// --- input files ---------------------------------------------------------

struct InputError : std::runtime_error {
  std::vector<std::string> problems;
  InputError(const std::string& what, std::vector<std::string> p)
      : std::runtime_error(what), problems(std::move(p)) {}
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path, {"cannot open " + path});
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in " + path, {e.what()});
  }
}

namespace detail {

inline bool is_int(const json& j) { return j.is_number_integer(); }

inline void check_schema(const json& j, std::vector<std::string>& bad) {
  if (!j.is_object()) {
    bad.push_back("top level must be an object");
    return;
  }
  if (!j.contains("schema")) bad.push_back("missing \"schema\"");
  else if (!is_int(j["schema"]) || j["schema"].get<long long>() != kSchemaVersion)
    bad.push_back("unsupported schema version (expected 1)");
}

}  // namespace detail

// {"schema":1, "strands":d, "factors":[{"conjugator":[...], "core":i, "exponent":e}, ...]}
inline BraidFactorization parse_factorization(const json& j) {
  std::vector<std::string> bad;
  detail::check_schema(j, bad);
  if (!bad.empty()) throw InputError("factorization file rejected", bad);
  BraidFactorization F;
  if (!j.contains("strands") || !detail::is_int(j["strands"]) || j["strands"].get<long long>() < 2 ||
      j["strands"].get<long long>() > 64)
    bad.push_back("\"strands\" must be an integer in 2..64");
  else
    F.strands = j["strands"].get<int>();
  if (!j.contains("factors") || !j["factors"].is_array()) bad.push_back("\"factors\" must be an array");
  if (!bad.empty()) throw InputError("factorization file rejected", bad);
  for (std::size_t k = 0; k < j["factors"].size(); ++k) {
    const json& f = j["factors"][k];
    std::string at = "factors[" + std::to_string(k) + "]";
    if (!f.is_object()) {
      bad.push_back(at + " must be an object");
      continue;
    }
    Factor fac;
    if (f.contains("conjugator")) {
      if (!f["conjugator"].is_array()) bad.push_back(at + ".conjugator must be an array");
      else
        for (const auto& x : f["conjugator"]) {
          if (!detail::is_int(x) || x.get<long long>() == 0 || std::abs(x.get<long long>()) >= F.strands)
            bad.push_back(at + ".conjugator letters must be nonzero with |letter| < strands");
          else
            fac.twist.conjugator.push_back(x.get<int>());
        }
    }
    if (!f.contains("core") || !detail::is_int(f["core"]) || f["core"].get<long long>() < 1 ||
        f["core"].get<long long>() >= F.strands)
      bad.push_back(at + ".core must be an integer in 1..strands-1");
    else
      fac.twist.core = f["core"].get<int>();
    if (!f.contains("exponent") || !detail::is_int(f["exponent"])) {
      bad.push_back(at + ".exponent must be one of 1, 2, -2, 3");
    } else {
      long long e = f["exponent"].get<long long>();
      if (e != 1 && e != 2 && e != -2 && e != 3) bad.push_back(at + ".exponent must be one of 1, 2, -2, 3");
      else fac.exponent = static_cast<int>(e);
    }
    for (auto it = f.begin(); it != f.end(); ++it)
      if (it.key() != "conjugator" && it.key() != "core" && it.key() != "exponent")
        bad.push_back(at + ": unknown field \"" + it.key() + "\"");
    F.factors.push_back(fac);
  }
  if (!bad.empty()) throw InputError("factorization file rejected", bad);
  return F;
}

inline json factorization_json(const BraidFactorization& F) {
  json fs = json::array();
  for (const auto& f : F.factors)
    fs.push_back({{"conjugator", word_json(f.twist.conjugator)}, {"core", f.twist.core}, {"exponent", f.exponent}});
  return {{"schema", kSchemaVersion}, {"strands", F.strands}, {"factors", fs}};
}

// {"schema":1, "degree":n, "images":[[a,b], ...]} with 1-based points.
inline MonodromyRep parse_theta(const json& j) {
  std::vector<std::string> bad;
  detail::check_schema(j, bad);
  if (!bad.empty()) throw InputError("theta file rejected", bad);
  if (!j.contains("degree") || !detail::is_int(j["degree"]) || j["degree"].get<long long>() < 2 ||
      j["degree"].get<long long>() > 4096)
    bad.push_back("\"degree\" must be an integer in 2..4096");
  if (!j.contains("images") || !j["images"].is_array()) bad.push_back("\"images\" must be an array");
  if (!bad.empty()) throw InputError("theta file rejected", bad);
  int n = j["degree"].get<int>();
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t k = 0; k < j["images"].size(); ++k) {
    const json& p = j["images"][k];
    std::string at = "images[" + std::to_string(k) + "]";
    if (!p.is_array() || p.size() != 2 || !detail::is_int(p[0]) || !detail::is_int(p[1])) {
      bad.push_back(at + " must be a pair of integers");
      continue;
    }
    long long a = p[0].get<long long>(), b = p[1].get<long long>();
    if (a < 1 || b < 1 || a > n || b > n || a == b) bad.push_back(at + " must name two distinct points in 1..degree");
    else pairs.push_back({static_cast<int>(a), static_cast<int>(b)});
  }
  if (!bad.empty()) throw InputError("theta file rejected", bad);
  return make_theta(n, pairs);
}

}  // namespace stab

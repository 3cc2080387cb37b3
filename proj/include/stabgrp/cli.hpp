#pragma once
// Command implementations behind the stabgrp executable. Each command
// returns a JSON report (with "schema": 1) and an exit status: 0 when every
// requested check passed, 1 when a check failed, 2 for rejected input.

#include <iomanip>

#include "stabgrp/io.hpp"
#include "stabgrp/suites.hpp"

namespace stab {

struct CommandResult {
  json report;
  int status = 0;
};

inline CommandResult input_error(const std::string& command, const std::string& message,
                                 std::vector<std::string> problems = {}) {
  if (problems.empty()) problems.push_back(message);
  return {{{"schema", kSchemaVersion},
           {"command", command},
           {"ok", false},
           {"error", {{"message", message}, {"problems", problems}}}},
          2};
}

// --- invariants ------------------------------------------------------------

struct InvariantsArgs {
  std::string tmpl;
  std::string variant;
  std::map<std::string, int> params;
};

inline CommandResult cmd_invariants(const InvariantsArgs& a) {
  const std::string cmd = "invariants";
  std::optional<CatalogEntryInfo> info;
  for (const auto& e : catalog_entries())
    if (e.name == a.tmpl) info = e;
  if (!info) return input_error(cmd, "unknown template " + a.tmpl);
  std::map<std::string, int> params;
  for (const auto& k : info->params) {
    auto it = a.params.find(k);
    if (it == a.params.end()) return input_error(cmd, a.tmpl + " needs --" + k);
    params[k] = it->second;
  }
  for (const auto& [k, v] : a.params)
    if (!params.count(k)) return input_error(cmd, a.tmpl + " does not take --" + k);

  Conjecture16Check C;
  try {
    C = crosscheck_conjecture16(a.tmpl, params, a.variant);
  } catch (const ConstraintError& e) {
    return input_error(cmd, std::string("constraint system rejected: ") + e.what());
  } catch (const std::invalid_argument& e) {
    return input_error(cmd, e.what());
  }
  json r = {{"schema", kSchemaVersion}, {"command", cmd}, {"template", a.tmpl}, {"variant", C.surface.variant},
            {"params", params_json(params)}, {"n", C.surface.n}};
  r["surface"] = surface_json(C.surface);
  r["homology"] = homology_json(C.surface, C.homology);
  Conjecture58Prediction parity = conjecture58_prediction(C.surface);
  json parity_j = parity_json(parity);
  json checks = json::object();
  bool ok = true;
  if (C.diagram) {
    const LambdaReport& R = *C.diagram;
    r["diagram"] = lambda_report_json(R);
    checks["generic_printed_agree"] = R.generic_printed_agree;
    checks["witness_agrees"] = R.witness_agrees;
    if (R.corner_redundant) checks["corner_redundant"] = *R.corner_redundant;
    for (auto it = checks.begin(); it != checks.end(); ++it) ok = ok && it->get<bool>();
    if (parity.available) parity_j["agrees_with_diagram"] = parity.order() == R.commutator.order();
  } else {
    r["diagram"] = nullptr;
  }
  r["notice"] = C.notice;
  r["checks"] = checks;
  json match = {{"conjectural", true}, {"value", C.match ? json(*C.match) : json(nullptr)}};
  r["match"] = {{"conjecture16", match}};
  r["predictions"] = {{"galois", galois_json(galois_prediction(C.surface))}, {"commutator_parity", parity_j}};
  r["ok"] = ok;
  return {r, ok ? 0 : 1};
}

// --- verify ----------------------------------------------------------------

inline json suite_json(const SuiteReport& R) {
  json cases = json::array();
  std::size_t failed = 0;
  for (const auto& c : R.cases) {
    cases.push_back({{"name", c.name}, {"params", params_json(c.params)}, {"checks", c.checks},
                     {"failed", c.failed}, {"failures", c.failures}, {"counts", c.counts}, {"passed", c.passed()}});
    failed += c.failed;
  }
  return {{"schema", kSchemaVersion}, {"command", "verify"}, {"suite", R.suite}, {"seed", R.seed},
          {"cases", cases}, {"checks", R.checks()}, {"failed", failed}, {"ok", R.passed()}};
}

inline CommandResult cmd_verify(const SuiteOptions& o) {
  try {
    SuiteReport R = run_suite(o);
    json j = suite_json(R);
    if (o.tmpl) j["template"] = template_name(*o.tmpl);
    if (o.pmax > 0) j["pmax"] = o.pmax;
    return {j, R.passed() ? 0 : 1};
  } catch (const std::invalid_argument& e) {
    return input_error("verify", e.what());
  }
}

// --- vankampen -------------------------------------------------------------

struct VanKampenArgs {
  json factorization;
  std::optional<json> theta;
  bool projective = false;
  bool partial = false;
  int stabilize_depth = 0;
};

inline CommandResult cmd_vankampen(const VanKampenArgs& a) {
  const std::string cmd = "vankampen";
  BraidFactorization F;
  std::optional<MonodromyRep> theta;
  try {
    F = parse_factorization(a.factorization);
    if (a.theta) theta = parse_theta(*a.theta);
  } catch (const InputError& e) {
    return input_error(cmd, e.what(), e.problems);
  }
  if (a.stabilize_depth < 0 || a.stabilize_depth > 3) return input_error(cmd, "--stabilize-depth must lie in 0..3");
  if (a.stabilize_depth > 0 && !theta) return input_error(cmd, "--stabilize-depth needs --theta");

  DeltaVerdict dv = check_delta_squared(F);
  json r = {{"schema", kSchemaVersion}, {"command", cmd}, {"projective", a.projective}, {"partial", a.partial}};
  r["delta_squared"] = {{"ok", dv.ok}, {"degree", dv.degree}, {"expected_degree", dv.expected_degree},
                        {"reason", dv.reason}};
  json failures = json::array();
  if (!dv.ok && !a.partial) {
    failures.push_back("delta squared check failed: " + dv.reason);
    r["failures"] = failures;
    r["ok"] = false;
    return {r, 1};
  }
  TaggedPresentation P = vk_presentation(F, a.projective);
  r["presentation"] = presentation_json(P);
  r["abelianization"] = invariants_json(abelianization(P.presentation));
  if (theta) {
    ThetaVerdict tv = validate_theta(P, *theta);
    r["theta"] = {{"ok", tv.ok}, {"transitive", tv.transitive}, {"violations", tv.violations}, {"degree", theta->degree}};
    for (const auto& v : tv.violations) failures.push_back("theta: " + v);
    if (tv.ok && a.stabilize_depth > 0) {
      TaggedPresentation S = stabilize(P, *theta, a.stabilize_depth);
      InvariantFactors sab = abelianization(S.presentation);
      r["stabilized"] = {{"depth", a.stabilize_depth},
                         {"added_relators", S.presentation.relators.size() - P.presentation.relators.size()},
                         {"abelianization", invariants_json(sab)}};
    }
  } else {
    r["theta"] = nullptr;
  }
  r["failures"] = failures;
  r["ok"] = failures.empty();
  return {r, failures.empty() ? 0 : 1};
}

// --- catalog ---------------------------------------------------------------

inline CommandResult cmd_catalog(const std::optional<InvariantsArgs>& entry) {
  json r = {{"schema", kSchemaVersion}, {"command", "catalog"}};
  if (!entry) {
    json es = json::array();
    for (const auto& e : catalog_entries())
      es.push_back({{"name", e.name}, {"params", e.params}, {"variants", e.variants}, {"description", e.description}});
    r["entries"] = es;
    r["ok"] = true;
    return {r, 0};
  }
  try {
    SurfaceData S = catalog(entry->tmpl, entry->params, entry->variant);
    r["surface"] = surface_json(S);
    r["homology"] = homology_json(S, lambda_from_pairing(S));
    r["predictions"] = {{"galois", galois_json(galois_prediction(S))},
                        {"commutator_parity", parity_json(conjecture58_prediction(S))}};
    r["ok"] = true;
    return {r, 0};
  } catch (const std::invalid_argument& e) {
    return input_error("catalog", e.what());
  }
}

// --- text rendering ----------------------------------------------------------

namespace detail {

inline void flatten_json(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  auto scalar_array = [](const json& a) {
    for (const auto& x : a)
      if (x.is_structured() && !(x.is_array() && std::all_of(x.begin(), x.end(), [](const json& y) { return y.is_primitive(); })))
        return false;
    return true;
  };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_json(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array() && !scalar_array(j)) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten_json(j[k], path + "[" + std::to_string(k) + "]", out);
  } else {
    out.push_back({path, j.is_string() ? j.get<std::string>() : j.dump()});
  }
}

inline std::string lattice_text(const json& rows) {
  std::string s = "<";
  for (std::size_t k = 0; k < rows.size(); ++k) s += (k ? ", (" : "(") + std::string(rows[k][0].dump()) + "," + rows[k][1].dump() + ")";
  return s + ">";
}

inline std::vector<std::pair<std::string, std::string>> invariants_rows(const json& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::string params;
  for (auto it = r["params"].begin(); it != r["params"].end(); ++it)
    params += (params.empty() ? "" : " ") + it.key() + "=" + it.value().dump();
  rows.push_back({"surface", r["template"].get<std::string>() + (r["variant"].get<std::string>().empty() ? "" : " " + r["variant"].get<std::string>())});
  rows.push_back({"parameters", params});
  rows.push_back({"n", r["n"].dump()});
  if (!r["diagram"].is_null()) {
    const json& d = r["diagram"];
    rows.push_back({"diagram Lambda", lattice_text(d["lambda"])});
    rows.push_back({"diagram Ab G0", d["ab"]["group"].get<std::string>()});
    rows.push_back({"commutator subgroup", d["commutator"]["group"].get<std::string>()});
    for (auto it = r["checks"].begin(); it != r["checks"].end(); ++it) rows.push_back({"check " + it.key(), it.value().dump()});
  } else {
    rows.push_back({"diagram", r["notice"].get<std::string>()});
  }
  std::string tag = r["homology"]["conjectural"].get<bool>() ? " [conjectural]" : "";
  rows.push_back({"homology Lambda" + tag, lattice_text(r["homology"]["lambda"])});
  rows.push_back({"homology Ab G0" + tag, r["homology"]["ab"]["group"].get<std::string>()});
  const json& m = r["match"]["conjecture16"]["value"];
  rows.push_back({"Conjecture 1.6 match [conjectural]", m.is_null() ? "n/a" : m.dump()});
  rows.push_back({"Galois cover pi_1 [conjectural]", r["predictions"]["galois"]["group"].get<std::string>()});
  const json& par = r["predictions"]["commutator_parity"];
  std::string pv = par["group"].get<std::string>();
  if (par.contains("agrees_with_diagram")) pv += par["agrees_with_diagram"].get<bool>() ? " (agrees)" : " (differs)";
  rows.push_back({"Conjecture 5.8 commutator [conjectural]", pv});
  return rows;
}

}  // namespace detail

// Two-column aligned table: a summary for invariants, otherwise every leaf.
inline std::string render_text(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  if (report.value("command", "") == "invariants" && report.contains("homology"))
    rows = detail::invariants_rows(report);
  else
    detail::flatten_json(report, "", rows);
  std::size_t w = 0;
  for (const auto& [k, v] : rows) w = std::max(w, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(w) + 2) << k << v << "\n";
  return os.str();
}

}  // namespace stab

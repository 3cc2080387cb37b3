// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

#include "stabgrp/suites.hpp"

using namespace stab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int workers() {
  try {
    return worker_count();
  } catch (const std::exception&) {
    return 1;
  }
}

// Z_2 x Z_2 x Z -> (Z_2)^2 x Z
std::string compact(const InvariantFactors& f) {
  std::string s;
  for (std::size_t i = 0; i < f.factors.size();) {
    std::size_t j = i;
    while (j < f.factors.size() && f.factors[j] == f.factors[i]) ++j;
    std::string g = f.factors[i] == 0 ? "Z" : "Z_" + f.factors[i].str();
    s += (s.empty() ? "" : " x ") + (j - i > 1 ? "(" + g + ")^" + std::to_string(j - i) : g);
    i = j;
  }
  return s.empty() ? "0" : s;
}

std::string first_failure(const SuiteReport& R) {
  for (const auto& c : R.cases)
    if (!c.failures.empty()) {
      std::string p;
      for (const auto& [k, v] : c.params) p += k + "=" + std::to_string(v) + " ";
      return c.name + " " + p + ": " + c.failures.front();
    }
  return "";
}

SuiteReport suite(const std::string& name, std::optional<Template> t = std::nullopt, std::vector<int> ns = {}) {
  SuiteOptions o;
  o.suite = name;
  o.tmpl = t;
  o.ns = std::move(ns);
  o.seed = 20240601;
  o.workers = workers();
  return run_suite(o);
}

// Criteria 1-3: theorem regressions over the full parameter grids.
Outcome regression(Template t, std::size_t expected_cases, double per_case_limit) {
  SuiteReport R = suite("diagram-crosscheck", t);
  Outcome o;
  double worst = 0;
  for (const auto& c : R.cases) worst = std::max(worst, c.seconds);
  o.pass = R.passed() && R.cases.size() == expected_cases && (per_case_limit <= 0 || worst < per_case_limit);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu cases, %zu checks, slowest case %.3f s", R.cases.size(), R.checks(), worst);
  o.detail = buf;
  if (!R.passed()) o.detail += "; " + first_failure(R);
  return o;
}

Outcome conjecture16_all() {
  std::size_t cases = 0, checks = 0;
  Outcome o;
  for (Template t : {Template::cp1xcp1, Template::f1, Template::doublecover}) {
    SuiteReport R = suite("conjecture16", t);
    cases += R.cases.size();
    checks += R.checks();
    if (!R.passed()) {
      o.pass = false;
      o.detail = first_failure(R) + "; ";
    }
  }
  o.pass = o.pass && cases == 25 + 15 + 256;
  o.detail += std::to_string(cases) + " cases, homology and diagram quotients compared";
  return o;
}

Outcome homology_catalog() {
  Outcome o;
  std::size_t n = 0;
  auto expect = [&](const SurfaceData& S, std::vector<long long> want) {
    InvariantFactors w;
    for (long long x : want) w.factors.push_back(x);
    InvariantFactors got = lambda_from_pairing(S).quotient;
    ++n;
    if (got != w) {
      o.pass = false;
      o.detail += S.name + " " + S.variant + " k=" + std::to_string(S.params.at("k")) + " gives " + got.to_string() + "; ";
    }
  };
  for (int k = 2; k <= 12; ++k) expect(catalog("cp2", {{"k", k}}), k % 3 == 0 ? std::vector<long long>{3, 0} : std::vector<long long>{0});
  for (int k = 2; k <= 8; ++k)
    for (const char* v : {"cubic", "(2,2)"}) expect(catalog("delpezzo", {{"k", k}}, v), {0});
  for (int k = 2; k <= 8; ++k)
    for (const char* v : {"quartic", "(3,2)", "(2,2,2)"}) expect(catalog("k3", {{"k", k}}, v), {k, 0});
  o.detail += std::to_string(n) + " catalog entries";
  return o;
}

Outcome tbraid_suites() {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  std::size_t checks = 0;
  long long disjoint = 0, adjacent = 0, conjugators = 0;
  for (const char* s : {"lemma31", "halftwists", "epsilon"}) {
    SuiteReport R = suite(s, std::nullopt, {3, 4, 5, 6});
    checks += R.checks();
    for (const auto& c : R.cases) {
      auto get = [&](const char* k) { return c.counts.count(k) ? c.counts.at(k) : 0LL; };
      disjoint += get("disjoint_pairs");
      adjacent += get("adjacent_pairs");
      conjugators += get("conjugators");
    }
    if (!R.passed()) {
      o.pass = false;
      o.detail += first_failure(R) + "; ";
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = o.pass && disjoint >= 1000 && adjacent >= 1000 && secs < 60;
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu checks, %lld disjoint and %lld adjacent pairs, %lld conjugators, %.2f s", checks,
                disjoint, adjacent, conjugators, secs);
  o.detail += buf;
  return o;
}

Outcome vk_cases(const std::vector<std::string>& names) {
  SuiteReport R = suite("vk-oracle");
  Outcome o;
  std::size_t used = 0;
  for (const auto& c : R.cases) {
    if (std::find(names.begin(), names.end(), c.name) == names.end()) continue;
    ++used;
    if (!c.passed()) {
      o.pass = false;
      o.detail += c.name + ": " + c.failures.front() + "; ";
    }
  }
  o.detail += std::to_string(used) + " oracle cases";
  return o;
}

Outcome psi_validator() {
  Outcome o;
  for (auto [p, q] : {std::pair{2, 2}, std::pair{3, 2}}) {
    auto D = build_cp1xcp1(p, q);
    auto lambda = lambda_from_pairing(catalog("cp1xcp1", {{"p", p}, {"q", q}})).generators;
    PsiAssignment P = theorem15_family(diagram_skeleton(D).theta, 1, 2);
    PsiVerdict v = psi_validate(P, lambda);
    SurjectivityReport S = check_surjectivity(D.n, kernel_plus_values(P), lambda);
    std::string tag = "cp1xcp1(" + std::to_string(p) + "," + std::to_string(q) + ")";
    if (!v.ok) o.detail += tag + " rule failure: " + v.failures.front() + "; ";
    bool ok = v.ok && S.inside_gamma && S.generates && S.image == S.expected;
    o.pass = o.pass && ok;
    o.detail += tag + " " + std::to_string(P.entries.size()) + " values, image " + compact(S.image) + (ok ? " = Gamma; " : " != Gamma; ");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> run;
  };
  bool c1 = false, c2 = false, c3 = false, c6 = false;
  std::vector<Criterion> criteria{
      {1, "CP1xCP1 regression, 2 <= p,q <= 6", [&] { auto o = regression(Template::cp1xcp1, 25, 1.0); c1 = o.pass; return o; }},
      {2, "F1 regression, 2 <= q < p <= 7", [&] { auto o = regression(Template::f1, 15, 0); c2 = o.pass; return o; }},
      {3, "X_{a,b} regression, a,b <= 4, p,q <= 5", [&] { auto o = regression(Template::doublecover, 256, 0); c3 = o.pass; return o; }},
      {4, "Conjecture 1.6 cross-check on criteria 1-3", conjecture16_all},
      {5, "homology catalog (cp2, Del Pezzo, K3)", homology_catalog},
      {6, "reduced braid group property suites, n = 3..6", [&] { auto o = tbraid_suites(); c6 = o.pass; return o; }},
      {7, "Van Kampen oracle",
       [] { return vk_cases({"conic", "cusp", "node", "cuspidal-cubic", "smooth", "stabilization"}); }},
      {8, "coset enumeration oracle", [] { return vk_cases({"free-kernel", "b3-kernel", "galois-conic"}); }},
      {9, "psi validator and surjectivity", psi_validator},
      {10, "scope of the computable shadows",
       [&] {
         Outcome o;
         o.pass = c1 && c2 && c3 && c6;
         o.detail =
             "not computed: property (*) as an isomorphism, Conjecture 1.3, non-abelian identification of G_k; "
             "the reported flag property_star is by construction; covered by Lambda, Ab, commutator and parity "
             "results of criteria 1-3 and the suites of criterion 6";
         return o;
       }},
  };
  bool all = true;
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.pass;
    std::printf("%-2d %s  %-46s %7.2f s  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}

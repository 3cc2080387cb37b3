#pragma once
// Verification suites run by `verify`. Each suite is a list of independent
// cases keyed by parameters; cases run on a worker pool and are reported in
// parameter order. Randomized cases seed from (seed, suite, parameters) only,
// so results do not depend on the worker count.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <thread>

#include "stabgrp/braidvk.hpp"
#include "stabgrp/diagram.hpp"
#include "stabgrp/fpgroup.hpp"
#include "stabgrp/homology.hpp"
#include "stabgrp/tbraid.hpp"

namespace stab {

inline int worker_count() {
  if (const char* s = std::getenv("STABGRP_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || v < 1) throw std::invalid_argument("STABGRP_WORKERS must be a positive integer");
    return static_cast<int>(std::min(v, 256L));
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? static_cast<int>(h) : 1;
}

// Runs fn(0..count-1) on up to `workers` threads; results in index order.
template <typename F>
auto parallel_map(std::size_t count, int workers, F fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<std::optional<T>> slots(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex m;
  auto run = [&] {
    for (;;) {
      std::size_t k = next++;
      if (k >= count) return;
      try {
        slots[k] = fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::size_t w = std::min<std::size_t>(std::max(1, workers), std::max<std::size_t>(count, 1));
  if (w == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < w; ++t) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct SuiteCase {
  std::string name;
  std::map<std::string, int> params;
  std::size_t checks = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // first few counterexamples
  std::map<std::string, long long> counts;
  double seconds = 0;

  bool passed() const { return failed == 0; }
  void check(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    ++failed;
    if (failures.size() < 20) failures.push_back(what());
  }
};

struct SuiteReport {
  std::string suite;
  std::uint32_t seed = 0;
  std::vector<SuiteCase> cases;

  bool passed() const {
    return std::all_of(cases.begin(), cases.end(), [](const SuiteCase& c) { return c.passed(); });
  }
  std::size_t checks() const {
    std::size_t s = 0;
    for (const auto& c : cases) s += c.checks;
    return s;
  }
};

struct SuiteOptions {
  std::string suite;
  std::vector<int> ns;           // tbraid suites; empty means 3..6
  std::uint32_t seed = 1;
  std::optional<Template> tmpl;  // diagram suites; empty means all templates
  int pmax = 0;                  // 0 means the template's default bound
  int workers = 1;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma31", "halftwists", "epsilon", "vk-oracle", "diagram-crosscheck",
                                              "conjecture16"};
  return names;
}

namespace suites {

inline std::mt19937 case_rng(std::uint32_t seed, const std::string& suite, const std::map<std::string, int>& params) {
  std::vector<std::uint32_t> s{seed};
  for (char c : suite) s.push_back(static_cast<unsigned char>(c));
  for (const auto& [k, v] : params) {
    for (char c : k) s.push_back(static_cast<unsigned char>(c));
    s.push_back(static_cast<std::uint32_t>(v));
  }
  std::seed_seq seq(s.begin(), s.end());
  return std::mt19937(seq);
}

inline Word random_braid(std::mt19937& rng, int n, int len) {
  std::uniform_int_distribution<int> d(1, n - 1);
  Word w;
  for (int k = 0; k < len; ++k) w.push_back(rng() % 2 ? d(rng) : -d(rng));
  return w;
}

inline Word random_free(std::mt19937& rng, int rank, int len) {
  std::uniform_int_distribution<int> d(1, rank);
  Word w;
  for (int k = 0; k < len; ++k) w.push_back(rng() % 2 ? d(rng) : -d(rng));
  return reduce(w);
}

inline std::string str(const Word& w) { return word_to_string(w, "X"); }

// --- tbraid suites ---------------------------------------------------------

inline void lemma31(SuiteCase& c, int n, std::mt19937& rng) {
  TBraidGroup G(n);
  for (int i = 1; i < n; ++i)
    for (int j = i + 2; j < n; ++j) {
      Word w{i, j, -i, -j};
      c.check(G.is_identity(G.eval(w)), [&] { return "far commutation fails: " + str(w); });
    }
  for (int i = 1; i + 1 < n; ++i) {
    Word w{i, i + 1, i, -(i + 1), -i, -(i + 1)};
    c.check(G.is_identity(G.eval(w)), [&] { return "braid relation fails: " + str(w); });
  }
  if (n >= 4) {
    Word a{-3, -1, 2, 1, 3};
    Word rel = concat(Word{2}, a, Word{-2}, inverse(a));
    c.check(G.is_identity(G.eval(rel)), [&] { return "reduction relator does not vanish: " + str(rel); });
  }
  const PTildeElem eta = G.eta();
  c.check(G.mul(eta, eta) == G.p_identity(), [] { return "eta^2 != 1"; });
  for (int i = 1; i < n; ++i) {
    c.check(G.act(i, eta) == eta && G.act(-i, eta) == eta, [&] { return "eta not central under x" + std::to_string(i); });
    c.check(G.eval(G.u_word(i)) == G.embed(G.u(i)), [&] { return "word for u" + std::to_string(i) + " is wrong"; });
  }
  c.check(G.u_word_mismatch().empty(), [] { return "generator words inconsistent with the action table"; });
  // stated commutators of P~_n
  auto comm = [&](const PTildeElem& a, const PTildeElem& b) { return G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))); };
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PTildeElem want = j == i + 1 ? eta : G.p_identity();
      c.check(comm(G.u(i), G.u(j)) == want,
              [&] { return "[u" + std::to_string(i) + ",u" + std::to_string(j) + "] wrong"; });
    }
  if (n >= 3) c.check(comm(G.s1(), G.u(2)) == eta, [] { return "[s1,u2] != eta"; });
  if (n >= 4)
    for (int j = 3; j < n; ++j)
      c.check(comm(G.s1(), G.u(j)) == G.p_identity(), [&] { return "s1 and u" + std::to_string(j) + " do not commute"; });
  c.check(G.eval({1, 1}) == G.embed(G.s1()), [] { return "X1^2 != s1"; });
  // homomorphism properties and normal-form generation
  int trials = 200;
  for (int t = 0; t < trials; ++t) {
    Word a = random_braid(rng, n, 1 + rng() % 10), b = random_braid(rng, n, 1 + rng() % 10);
    BTildeElem ea = G.eval(a), eb = G.eval(b), eab = G.eval(concat(a, b));
    c.check(G.mul(ea, eb) == eab, [&] { return "eval not multiplicative on " + str(a) + " | " + str(b); });
    c.check(G.delta(eab) == braid_degree(a) + braid_degree(b), [&] { return "degree not additive on " + str(a); });
    c.check(eab.pi == perm_then(braid_permutation(a, n), braid_permutation(b, n)),
            [&] { return "permutation not multiplicative on " + str(a); });
    c.check(G.eval(G.word_of(ea)) == ea, [&] { return "normal form word does not evaluate back: " + str(a); });
  }
  c.counts["random_words"] = trials;
  InvariantFactors want0{std::vector<Int>(n - 1, 0)}, want{std::vector<Int>(n, 0)};
  c.check(G.pure_abelianization(false) == want0, [&] { return "Ab(P~_n,0) = " + G.pure_abelianization(false).to_string(); });
  c.check(G.pure_abelianization(true) == want, [&] { return "Ab(P~_n) = " + G.pure_abelianization(true).to_string(); });
}

inline void halftwists(SuiteCase& c, int n, std::mt19937& rng, std::size_t want_pairs = 1000) {
  TBraidGroup G(n);
  // exhaustive conjugators s1^a u^b eta^e with |a|, |b_i| <= 2
  std::vector<long long> b(n - 1, -2);
  long long enumerated = 0;
  for (long long a = -2; a <= 2; ++a)
    for (;;) {
      for (int e = 0; e < 2; ++e) {
        PTildeElem g = G.p_identity();
        g.alpha = a;
        g.beta = b;
        g.eps = e;
        BTildeElem conj = G.conj(G.x(1), G.embed(g));
        long long k = (n >= 3 ? b[1] : 0) - 2 * b[0];
        c.check(conj == G.local_halftwist(k), [&] { return "conjugate of x1 by " + to_string(g) + " is not x1 u1^k"; });
        auto cl = G.classify_halftwist(conj);
        c.check(cl && cl->a == 1 && cl->b == 2 && cl->k == k, [&] { return "classification failed for " + to_string(g); });
        ++enumerated;
      }
      std::size_t j = 0;
      while (j < b.size() && b[j] == 2) b[j++] = -2;
      if (j == b.size()) break;
      ++b[j];
    }
  c.counts["conjugators"] = enumerated;

  std::vector<std::pair<BTildeElem, HalfTwistClass>> pool;
  for (int t = 0; t < 200; ++t) {
    BTildeElem h;
    if (t % 2) {
      Word w = random_braid(rng, n, 1 + rng() % 8);
      int i = 1 + rng() % (n - 1);
      h = G.eval(concat(w, Word{i}, inverse(w)));
    } else {
      int a = 1 + rng() % (n - 1);
      int bb = a + 1 + rng() % (n - a);
      h = G.halftwist(a, bb, static_cast<long long>(rng() % 11) - 5);
    }
    auto cl = G.classify_halftwist(h);
    c.check(cl.has_value(), [&] { return "conjugate of a generator not classified: " + to_string(h); });
    if (cl) pool.push_back({h, *cl});
  }
  std::size_t dj = 0, ad = 0;
  bool disjoint_possible = n >= 4;
  for (std::size_t tries = 0; tries < 400000 && ((disjoint_possible && dj < want_pairs) || ad < want_pairs); ++tries) {
    const auto& [x, cx] = pool[rng() % pool.size()];
    const auto& [y, cy] = pool[rng() % pool.size()];
    int common = (cx.a == cy.a) + (cx.a == cy.b) + (cx.b == cy.a) + (cx.b == cy.b);
    if (common == 0 && dj < want_pairs) {
      c.check(G.is_identity(G.commutator(x, y)), [&] { return "disjoint half-twists do not commute: " + to_string(x) + " ; " + to_string(y); });
      ++dj;
    } else if (common == 1 && ad < want_pairs) {
      c.check(G.mul(G.mul(x, y), x) == G.mul(G.mul(y, x), y),
              [&] { return "adjacent half-twists violate xyx = yxy: " + to_string(x) + " ; " + to_string(y); });
      ++ad;
    }
  }
  c.counts["disjoint_pairs"] = static_cast<long long>(dj);
  c.counts["adjacent_pairs"] = static_cast<long long>(ad);
  if (disjoint_possible) c.check(dj >= want_pairs, [&] { return "only " + std::to_string(dj) + " disjoint pairs sampled"; });
  c.check(ad >= want_pairs, [&] { return "only " + std::to_string(ad) + " adjacent pairs sampled"; });
}

inline void epsilon(SuiteCase& c, int n, std::mt19937& rng) {
  TBraidGroup G(n);
  for (int i = 1; i < n; ++i) {
    std::string I = std::to_string(i);
    for (int j = 1; j < n; ++j)
      if (j != i) c.check(G.epsilon_auto(i, G.x(j)) == G.x(j), [&] { return "eps" + I + " moves x" + std::to_string(j); });
    c.check(G.epsilon_auto(i, G.x(i)) == G.mul(G.x(i), G.embed(G.u(i))), [&] { return "eps" + I + "(x) != x u"; });
    c.check(G.epsilon_auto(i, G.embed(G.u(i))) == G.embed(G.mul(G.u(i), G.eta())), [&] { return "eps" + I + "(u) != u eta"; });
    BTildeElem pre = G.mul(G.x(i), G.embed(G.mul(G.inv(G.u(i)), G.eta())));
    c.check(G.epsilon_auto(i, pre) == G.x(i), [&] { return "eps" + I + "(x u^-1 eta) != x"; });
  }
  for (int t = 0; t < 100; ++t) {
    Word a = random_braid(rng, n, 1 + rng() % 8), b = random_braid(rng, n, 1 + rng() % 8);
    int i = 1 + static_cast<int>(rng() % (n - 1));
    c.check(G.epsilon_auto(i, G.eval(concat(a, b))) == G.mul(G.epsilon_auto(i, G.eval(a)), G.epsilon_auto(i, G.eval(b))),
            [&] { return "eps" + std::to_string(i) + " not multiplicative on " + str(a) + " | " + str(b); });
  }
  // kappa is a homomorphism from the semidirect product
  std::uniform_int_distribution<int> d(-2, 2);
  auto pure0 = [&](int e) {
    PTildeElem u = G.p_identity();
    for (auto& x : u.beta) x = d(rng);
    u.eps = e;
    return u;
  };
  for (int t = 0; t < 100; ++t) {
    BTildeElem a = G.eval(random_braid(rng, n, 6)), b = G.eval(random_braid(rng, n, 6));
    PTildeElem ua = pure0(t % 2), ub = pure0((t / 2) % 2);
    BTildeElem conj = G.mul(G.mul(G.inv(b), G.embed(ua)), b);
    c.check(G.in_p0(conj), [] { return "conjugate of a degree-zero pure element left P~_n,0"; });
    if (!G.in_p0(conj)) continue;
    c.check(G.kappa(G.mul(a, b), G.mul(conj.t, ub)) == G.pair_mul(G.kappa(a, ua), G.kappa(b, ub)),
            [&] { return "kappa not multiplicative at " + to_string(a) + " ; " + to_string(b); });
  }
  c.counts["random_words"] = 200;
}

// --- Van Kampen and coset oracles ------------------------------------------

inline BraidFactorization conic() { return {2, {{{{}, 1}, 1}, {{{}, 1}, 1}}}; }

// (X1 ... X_{d-1})^d: a smooth curve of degree d, all tangencies.
inline BraidFactorization smooth_curve(int d) {
  BraidFactorization F{d, {}};
  for (int r = 0; r < d; ++r)
    for (int i = 1; i < d; ++i) F.factors.push_back({{{}, i}, 1});
  return F;
}

// X1^3 (X1^-2 X2 X1^2) X2 X1 = Delta^2 in B_3.
inline BraidFactorization cuspidal_cubic() {
  return {3, {{{{}, 1}, 3}, {{{-1, -1}, 2}, 1}, {{{}, 2}, 1}, {{{}, 1}, 1}}};
}

inline std::vector<std::pair<std::string, std::map<std::string, int>>> vk_cases() {
  std::vector<std::pair<std::string, std::map<std::string, int>>> cs{
      {"conic", {}}, {"cusp", {}}, {"node", {}}, {"cuspidal-cubic", {}}};
  for (int d = 2; d <= 6; ++d) cs.push_back({"smooth", {{"d", d}}});
  cs.push_back({"stabilization", {}});
  cs.push_back({"free-kernel", {}});
  cs.push_back({"b3-kernel", {}});
  cs.push_back({"galois-conic", {}});
  return cs;
}

inline void vk_case(SuiteCase& c, std::mt19937& rng) {
  auto ab = [](const TaggedPresentation& P) { return abelianization(P.presentation); };
  if (c.name == "conic") {
    auto A = vk_presentation(conic(), false), B = vk_presentation(conic(), true);
    c.check(check_delta_squared(conic()).ok, [] { return "conic factorization is not Delta^2"; });
    for (const auto& r : A.presentation.relators)
      c.check(r == Word{1, -2}, [&] { return "conic relator " + word_to_string(r); });
    c.check(ab(A).to_string() == "Z", [&] { return "conic affine abelianization " + ab(A).to_string(); });
    c.check(ab(B).to_string() == "Z_2", [&] { return "conic projective abelianization " + ab(B).to_string(); });
  } else if (c.name == "cusp") {
    auto P = vk_presentation({2, {{{{}, 1}, 3}}}, false);
    Word want = reduce({1, 2, 1, -2, -1, -2});
    c.check(P.presentation.relators == std::vector<Word>{want}, [] { return "cusp relator is not g1 g2 g1 = g2 g1 g2"; });
    c.check(ab(P).to_string() == "Z", [&] { return "cusp abelianization " + ab(P).to_string(); });
    auto v = validate_theta(P, make_theta(3, {{1, 2}, {2, 3}}));
    c.check(v.ok, [] { return "adjacent transpositions rejected at a cusp"; });
    c.check(!validate_theta(P, make_theta(4, {{1, 2}, {3, 4}})).ok, [] { return "disjoint transpositions accepted at a cusp"; });
  } else if (c.name == "node") {
    auto P = vk_presentation({2, {{{{}, 1}, 2}}}, false), N = vk_presentation({2, {{{{}, 1}, -2}}}, false);
    c.check(P.presentation.relators == std::vector<Word>{commutator({1}, {2})}, [] { return "node relator is not [g1,g2]"; });
    c.check(P.presentation.relators == N.presentation.relators, [] { return "negative node differs from positive node"; });
    c.check(ab(P).to_string() == "Z x Z", [&] { return "node abelianization " + ab(P).to_string(); });
  } else if (c.name == "cuspidal-cubic" || c.name == "smooth") {
    int d = c.name == "smooth" ? c.params.at("d") : 3;
    BraidFactorization F = c.name == "smooth" ? smooth_curve(d) : cuspidal_cubic();
    InvariantFactors proj_want{{Int(d)}};
    for (int trial = 0; trial < 8; ++trial) {
      BraidFactorization H = F;
      for (int m = 0; m < trial; ++m) H = hurwitz_move(H, rng() % (H.factors.size() - 1));
      c.check(check_delta_squared(H).ok, [&] { return "Hurwitz move broke Delta^2 (trial " + std::to_string(trial) + ")"; });
      auto a = ab(vk_presentation(H, false)), p = ab(vk_presentation(H, true));
      c.check(a.to_string() == "Z", [&] { return "affine abelianization " + a.to_string(); });
      c.check(p == proj_want, [&] { return "projective abelianization " + p.to_string(); });
    }
  } else if (c.name == "stabilization") {
    for (int trial = 0; trial < 20; ++trial) {
      int d = 3 + trial % 2;
      TaggedPresentation P;
      P.presentation.generators = d;
      for (int r = 0; r < 2; ++r) P.presentation.add(random_free(rng, d, 5));
      std::vector<std::pair<int, int>> imgs;
      for (int i = 0; i < d; ++i) {
        int a = 1 + rng() % 5, b = 1 + rng() % 5;
        if (a == b) b = a % 5 + 1;
        imgs.push_back({a, b});
      }
      MonodromyRep th = make_theta(5, imgs);
      auto base = ab(P);
      for (int depth = 0; depth <= 2; ++depth) {
        auto S = ab(stabilize(P, th, depth));
        c.check(S == base, [&] { return "stabilization at depth " + std::to_string(depth) + " changed " + base.to_string() + " to " + S.to_string(); });
      }
    }
  } else if (c.name == "free-kernel") {
    Presentation F2{2, {}};
    auto T = kernel_table(F2, make_theta(2, {{1, 2}, {1, 2}}), 100);
    auto S = reidemeister_schreier(F2, T);
    c.check(T.index() == 2, [] { return "Ker(F2 -> S2) has the wrong index"; });
    c.check(S.presentation.generators == 3 && S.presentation.relators.empty(), [] { return "kernel is not free of rank 3"; });
    c.check(abelianization(S.presentation).to_string() == "Z x Z x Z", [] { return "kernel abelianization is not Z^3"; });
  } else if (c.name == "b3-kernel") {
    Presentation B3{2, {}};
    B3.add({1, 2, 1, -2, -1, -2});
    auto r = todd_coxeter(B3, {{1, 1}, {2, 2}, {2, 1, 1, -2}}, 1000);
    c.check(r.status == EnumStatus::closed && r.table.index() == 6, [] { return "pure braid subgroup of B3 does not close at index 6"; });
    auto T = kernel_table(B3, make_theta(3, {{1, 2}, {2, 3}}), 100);
    c.check(T.index() == 6, [] { return "B3 -> S3 image has the wrong order"; });
  } else if (c.name == "galois-conic") {
    Presentation P = vk_presentation(conic(), false).presentation;
    auto G = galois_quotient(P, make_theta(2, {{1, 2}, {1, 2}}), 1000);
    c.check(G.order && *G.order == 1, [] { return "Galois quotient of the conic is not trivial"; });
    c.check(G.abelian.trivial(), [] { return "Galois quotient of the conic has nontrivial abelianization"; });
    c.check(galois_group_description(2, 2) == "trivial", [] { return "degree-2 prediction is not trivial"; });
  }
}

// --- diagram suites ---------------------------------------------------------

// Closed forms stated by the regression theorems.
struct TheoremClosedForm {
  std::vector<IntVec> lambda;
  InvariantFactors ab;
  long long n = 0;
  int commutator_order = 0;
};

inline TheoremClosedForm theorem_closed_form(Template t, const std::map<std::string, int>& P) {
  auto I = [](long long x) { return Int(x); };
  TheoremClosedForm f;
  if (t == Template::cp1xcp1) {
    long long p = P.at("p"), q = P.at("q");
    bool even = p % 2 == 0 && q % 2 == 0;
    f.lambda = {{I(2 - p), I(2)}, {I(2 - q), I(2)}};
    f.ab = even ? invariants_from_diagonal({I(2), I(p - q)}, 2) : invariants_from_diagonal({I(1), I(2 * (p - q))}, 2);
    f.n = 2 * p * q;
    f.commutator_order = even ? 4 : 2;
  } else if (t == Template::f1) {
    long long p = P.at("p"), q = P.at("q");
    f.lambda = {{I(2 * p - 3), I(p - 3)}, {I(2 * q - 2), I(q - 2)}};
    f.ab = invariants_from_diagonal({I(3 * q - 2 * p)}, 1);
    f.n = (2 * p - q) * q;
    f.commutator_order = (p % 2 == 1 && q % 2 == 0) ? 2 : 1;
  } else {
    long long a = P.at("a"), b = P.at("b"), p = P.at("p"), q = P.at("q");
    f.lambda = {{I(p + a - 2), I(a - 2)}, {I(q + b - 2), I(b - 2)}};
    f.ab = quotient_invariants(2, {{I(p), I(a - 2)}, {I(q), I(b - 2)}});
    f.n = 4 * p * q;
    if (a % 2 == 0 && b % 2 == 0 && p % 2 == 0 && q % 2 == 0) f.commutator_order = 4;
    else if ((a % 2 || b % 2) && ((a + p) % 2 || (b + q) % 2)) f.commutator_order = 1;
    else f.commutator_order = 2;
  }
  return f;
}

// X_{a,b} sweeps a, b in 1..4 and p, q in 2..pmax (default 5): a superset of
// both readings of the 144-case grid.
inline int default_pmax(Template t) { return t == Template::cp1xcp1 ? 6 : t == Template::f1 ? 7 : 5; }

inline std::vector<std::map<std::string, int>> template_grid(Template t, int pmax) {
  if (pmax <= 0) pmax = default_pmax(t);
  std::vector<std::map<std::string, int>> g;
  if (t == Template::cp1xcp1) {
    for (int p = 2; p <= pmax; ++p)
      for (int q = 2; q <= pmax; ++q) g.push_back({{"p", p}, {"q", q}});
  } else if (t == Template::f1) {
    for (int p = 3; p <= pmax; ++p)
      for (int q = 2; q < p; ++q) g.push_back({{"p", p}, {"q", q}});
  } else {
    for (int a = 1; a <= 4; ++a)
      for (int b = 1; b <= 4; ++b)
        for (int p = 2; p <= pmax; ++p)
          for (int q = 2; q <= pmax; ++q) g.push_back({{"a", a}, {"b", b}, {"p", p}, {"q", q}});
  }
  return g;
}

inline void diagram_crosscheck(SuiteCase& c, Template t) {
  LambdaReport R = solve_lambda(build_diagram(t, c.params));
  TheoremClosedForm f = theorem_closed_form(t, c.params);
  c.check(R.generic_printed_agree, [&] {
    return "generic and printed constraint lists disagree" + (R.discrepancies.empty() ? "" : ": " + R.discrepancies[0]);
  });
  c.check(lattice_equal(R.lambda, f.lambda, 2), [&] {
    std::string s;
    for (const auto& v : R.lambda) s += vec_to_string(v);
    return "Lambda = <" + s + "> differs from the closed form";
  });
  c.check(R.ab_factor == f.ab, [&] { return "Ab factor " + R.ab_factor.to_string() + " != " + f.ab.to_string(); });
  c.check(R.n == f.n && R.multiplicity == f.n - 1, [&] { return "multiplicity " + std::to_string(R.multiplicity); });
  c.check(R.commutator.order() == f.commutator_order,
          [&] { return "commutator " + R.commutator.name() + ", expected order " + std::to_string(f.commutator_order); });
  c.check(R.witness_agrees, [] { return "B~_4 commutator witness disagrees with the parity rule"; });
  if (t == Template::doublecover)
    c.check(R.corner_redundant.value_or(false), [] { return "corner constraint is not redundant"; });
}

inline void conjecture16(SuiteCase& c, Template t) {
  Conjecture16Check C = crosscheck_conjecture16(template_name(t), c.params);
  c.check(C.match.value_or(false), [&] {
    return "diagram " + (C.diagram_quotient ? C.diagram_quotient->to_string() : std::string("-")) + " vs homology " +
           C.homology.quotient.to_string();
  });
}

}  // namespace suites

inline SuiteReport run_suite(const SuiteOptions& o) {
  using Clock = std::chrono::steady_clock;
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), o.suite) == names.end())
    throw std::invalid_argument("unknown suite " + o.suite);
  struct Job {
    std::string name;
    std::map<std::string, int> params;
    Template tmpl = Template::cp1xcp1;
  };
  std::vector<Job> jobs;
  if (o.suite == "lemma31" || o.suite == "halftwists" || o.suite == "epsilon") {
    std::vector<int> ns = o.ns.empty() ? std::vector<int>{3, 4, 5, 6} : o.ns;
    for (int n : ns) {
      if (n < 3 || n > 12) throw std::invalid_argument("--n must lie in 3..12");
      jobs.push_back({"n=" + std::to_string(n), {{"n", n}}, {}});
    }
  } else if (o.suite == "vk-oracle") {
    for (auto& [name, params] : suites::vk_cases()) jobs.push_back({name, params, {}});
  } else {
    std::vector<Template> ts = o.tmpl ? std::vector<Template>{*o.tmpl}
                                      : std::vector<Template>{Template::cp1xcp1, Template::f1, Template::doublecover};
    for (Template t : ts)
      for (auto& p : suites::template_grid(t, o.pmax)) jobs.push_back({template_name(t), p, t});
  }
  SuiteReport R;
  R.suite = o.suite;
  R.seed = o.seed;
  R.cases = parallel_map(jobs.size(), o.workers, [&](std::size_t k) {
    const Job& j = jobs[k];
    SuiteCase c;
    c.name = j.name;
    c.params = j.params;
    auto rng = suites::case_rng(o.seed, o.suite + "/" + j.name, j.params);
    auto t0 = Clock::now();
    try {
      if (o.suite == "lemma31") suites::lemma31(c, j.params.at("n"), rng);
      else if (o.suite == "halftwists") suites::halftwists(c, j.params.at("n"), rng);
      else if (o.suite == "epsilon") suites::epsilon(c, j.params.at("n"), rng);
      else if (o.suite == "vk-oracle") suites::vk_case(c, rng);
      else if (o.suite == "diagram-crosscheck") suites::diagram_crosscheck(c, j.tmpl);
      else suites::conjecture16(c, j.tmpl);
    } catch (const std::exception& e) {
      std::string what = e.what();
      c.check(false, [&] { return "exception: " + what; });
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return c;
  });
  return R;
}

}  // namespace stab

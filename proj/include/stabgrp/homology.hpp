// Intersection-theoretic side: Lambda_k from pairing data, the surface
// catalog, conjecture cross-checks and the psi_k validator.
#pragma once

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabgrp/braidvk.hpp"
#include "stabgrp/diagram.hpp"
#include "stabgrp/intlinalg.hpp"
#include "stabgrp/words.hpp"

namespace stab {

struct SurfaceData {
  std::string name;
  std::string variant;
  std::map<std::string, int> params;
  std::vector<std::string> basis;
  std::vector<IntVec> rows;    // (alpha.L, alpha.R) per basis class, or bare generators when !pairing
  bool pairing = true;
  bool full_basis = true;      // rows cover a basis of H_2 (so the L-row divisibility is exact)
  long long n = 0;
  std::optional<IntMatrix> form;
  std::optional<IntVec> k_row;  // alpha.K per basis class
  bool conjectural = false;
  std::optional<Template> diagram_template;
  std::string provenance;

  IntVec l_row() const {
    IntVec v;
    for (const auto& r : rows) v.push_back(r[0]);
    return v;
  }
  IntVec r_row() const {
    IntVec v;
    for (const auto& r : rows) v.push_back(r[1]);
    return v;
  }
};

struct CatalogEntryInfo {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> variants;
  std::string description;
};

inline std::vector<CatalogEntryInfo> catalog_entries() {
  return {
      {"cp1xcp1", {"p", "q"}, {}, "CP1 x CP1 with O(p,q), p,q >= 2"},
      {"cp2", {"k"}, {}, "CP2 with O(k)"},
      {"f1", {"p", "q"}, {}, "Hirzebruch surface F1 with O(pF+qE), p > q >= 2"},
      {"delpezzo", {"k"}, {"cubic", "(2,2)"}, "cubic surface in CP3 or (2,2) complete intersection in CP4, O(kH)"},
      {"k3", {"k"}, {"quartic", "(3,2)", "(2,2,2)"}, "K3 surface as quartic, (3,2) or (2,2,2) complete intersection, O(kH)"},
      {"doublecover", {"a", "b", "p", "q"}, {}, "double cover X_{a,b} of CP1 x CP1 branched along a (2a,2b) curve"},
      {"hirzebruch_dc", {"m", "a", "p", "q"}, {}, "double cover of F_2m branched along a section and a (2a-1) multisection"},
  };
}

inline SurfaceData catalog(const std::string& name, const std::map<std::string, int>& params,
                           const std::string& variant = "") {
  auto get = [&](const char* k) {
    auto it = params.find(k);
    if (it == params.end()) throw std::invalid_argument(name + ": missing parameter " + k);
    return static_cast<long long>(it->second);
  };
  auto I = [](long long x) { return Int(x); };
  SurfaceData S;
  S.name = name;
  S.variant = variant;
  S.params = params;
  if (name == "cp1xcp1") {
    long long p = get("p"), q = get("q");
    if (p < 2 || q < 2) throw std::invalid_argument("cp1xcp1 requires p, q >= 2");
    S.basis = {"alpha", "beta"};
    S.rows = {{I(q), I(3 * q - 2)}, {I(p), I(3 * p - 2)}};
    S.n = 2 * p * q;
    S.form = IntMatrix::from_rows({{0, 1}, {1, 0}}, 2);
    S.k_row = IntVec{-2, -2};
    S.diagram_template = Template::cp1xcp1;
    S.provenance = "L = p alpha + q beta, K = -2 alpha - 2 beta";
  } else if (name == "cp2") {
    long long k = get("k");
    if (k < 1) throw std::invalid_argument("cp2 requires k >= 1");
    S.basis = {"line"};
    S.rows = {{I(k), I(3 * k - 3)}};
    S.n = k * k;
    S.form = IntMatrix::from_rows({{1}}, 1);
    S.k_row = IntVec{-3};
    S.provenance = "L = kH, K = -3H; diagram relation list not available";
  } else if (name == "f1") {
    long long p = get("p"), q = get("q");
    if (!(p > q && q >= 2)) throw std::invalid_argument("f1 requires p > q >= 2");
    S.basis = {"F", "E"};
    S.rows = {{I(q), I(3 * q - 2)}, {I(p - q), I(3 * p - 3 * q - 1)}};
    S.n = (2 * p - q) * q;
    S.form = IntMatrix::from_rows({{0, 1}, {1, -1}}, 2);
    S.k_row = IntVec{-2, -1};
    S.diagram_template = Template::f1;
    S.provenance = "L = pF + qE, R = (3p-3)F + (3q-2)E";
  } else if (name == "delpezzo" || name == "k3") {
    long long k = get("k");
    if (k < 2) throw std::invalid_argument(name + " requires k >= 2");
    std::map<std::string, long long> degree = name == "delpezzo"
        ? std::map<std::string, long long>{{"cubic", 3}, {"(2,2)", 4}}
        : std::map<std::string, long long>{{"quartic", 4}, {"(3,2)", 6}, {"(2,2,2)", 8}};
    std::string v = !variant.empty() ? variant : name == "delpezzo" ? "cubic" : "quartic";
    auto it = degree.find(v);
    if (it == degree.end()) throw std::invalid_argument(name + ": unknown variant " + v);
    S.variant = v;
    S.basis = {"H"};
    S.rows = {{I(k), I(name == "delpezzo" ? 3 * k - 1 : 3 * k)}};
    S.n = it->second * k * k;
    S.provenance = name == "delpezzo" ? "H primitive, K = -H; only the pairing image is stored"
                                      : "H primitive, K = 0; only the pairing image is stored";
  } else if (name == "doublecover") {
    long long a = get("a"), b = get("b"), p = get("p"), q = get("q");
    if (a < 1 || b < 1 || p < 2 || q < 2) throw std::invalid_argument("doublecover requires a, b >= 1 and p, q >= 2");
    S.basis = {"C_i", "C'_i"};
    S.rows = {{I(q), I(3 * q + b - 2)}, {I(p), I(3 * p + a - 2)}};
    S.full_basis = false;
    S.n = 4 * p * q;
    S.diagram_template = Template::doublecover;
    S.provenance = "preimages of the blown-up branch components; the full intersection form is not stored";
  } else if (name == "hirzebruch_dc") {
    long long m = get("m"), a = get("a"), p = get("p"), q = get("q");
    if (m < 1 || a < 1 || p < 2 || q < 2 || p <= 2 * m * q)
      throw std::invalid_argument("hirzebruch_dc requires m, a >= 1, p, q >= 2 and p > 2mq");
    S.rows = {{I(p - 2 * m * q), I(m - 2)}, {I(2 * q), I(2 * a - 4)}};
    S.pairing = false;
    S.full_basis = false;
    S.n = 4 * q * (p - m * q);
    S.conjectural = true;
    S.provenance = "conjectured generators of Lambda; pairing data not available";
  } else {
    throw std::invalid_argument("unknown catalog entry " + name);
  }
  return S;
}

struct LambdaData {
  std::vector<IntVec> generators;
  std::vector<IntVec> hnf;
  InvariantFactors quotient;
};

inline LambdaData lambda_from_pairing(const SurfaceData& S) {
  LambdaData L;
  L.generators = S.rows;
  L.hnf = hnf_rows(lattice_hnf(S.rows, 2));
  L.quotient = quotient_invariants(2, S.rows);
  return L;
}

struct Conjecture16Check {
  std::optional<LambdaReport> diagram;
  SurfaceData surface;
  LambdaData homology;
  std::optional<InvariantFactors> diagram_quotient;
  std::optional<long long> diagram_multiplicity;
  long long homology_multiplicity = 0;
  std::optional<bool> lattices_equal;
  std::optional<bool> match;  // empty when the diagram side is unavailable
  std::string notice;
};

inline Conjecture16Check crosscheck_conjecture16(const std::string& name, const std::map<std::string, int>& params,
                                                 const std::string& variant = "") {
  Conjecture16Check C;
  C.surface = catalog(name, params, variant);
  C.homology = lambda_from_pairing(C.surface);
  C.homology_multiplicity = C.surface.n - 1;
  if (!C.surface.diagram_template) {
    C.notice = "no degeneration diagram relation list for " + name + "; homology side only";
    return C;
  }
  C.diagram = solve_lambda(build_diagram(*C.surface.diagram_template, params));
  C.diagram_quotient = C.diagram->ab_factor;
  C.diagram_multiplicity = C.diagram->multiplicity;
  C.lattices_equal = lattice_equal(C.diagram->lambda, C.homology.generators, 2);
  C.match = *C.diagram_quotient == C.homology.quotient && *C.diagram_multiplicity == C.homology_multiplicity;
  return C;
}

struct GaloisPrediction {
  bool available = false;
  Int s = 0;             // divisibility of the L-row
  long long exponent = 0;
  bool trivial = true;
  bool exact_divisibility = true;
  std::string description;
};

// Fundamental group of the Galois cover, predicted as (Z_s)^(n-2).
inline GaloisPrediction galois_prediction(const SurfaceData& S) {
  GaloisPrediction g;
  if (!S.pairing) {
    g.description = "insufficient data";
    return g;
  }
  g.available = true;
  g.s = divisibility(S.l_row());
  g.exponent = std::max(0LL, S.n - 2);
  g.trivial = g.s == 1 || g.exponent == 0;
  g.exact_divisibility = S.full_basis;
  g.description = g.trivial ? "trivial" : "(Z_" + g.s.str() + ")^" + std::to_string(g.exponent);
  return g;
}

// Galois prediction for a cover of degree n with divisibility s.
inline std::string galois_group_description(const Int& s, long long n) {
  long long e = std::max(0LL, n - 2);
  if (s == 1 || e == 0) return "trivial";
  return "(Z_" + s.str() + ")^" + std::to_string(e);
}

struct Conjecture58Prediction {
  bool available = false;
  bool gamma1 = false;  // Z_2 when X is spin
  bool gamma2 = false;  // Z_2 when L = K mod 2
  int order() const { return available ? (gamma1 ? 2 : 1) * (gamma2 ? 2 : 1) : 0; }
  std::string description() const {
    if (!available) return "insufficient data";
    if (gamma1 && gamma2) return "Z_2 x Z_2";
    if (gamma1 || gamma2) return "Z_2";
    return "trivial";
  }
};

inline Conjecture58Prediction conjecture58_prediction(const SurfaceData& S) {
  Conjecture58Prediction c;
  if (!S.form || !S.k_row || !S.pairing) return c;
  c.available = true;
  const IntMatrix& f = *S.form;
  c.gamma1 = true;
  for (std::size_t i = 0; i < f.rows(); ++i)
    if (f(i, i) % 2 != 0) c.gamma1 = false;
  c.gamma2 = true;
  IntVec l = S.l_row();
  for (std::size_t i = 0; i < l.size(); ++i)
    if ((l[i] - (*S.k_row)[i]) % 2 != 0) c.gamma2 = false;
  return c;
}

// Rewrites a catalog entry in a new basis: rows, form and K transform by U.
inline SurfaceData change_basis(const SurfaceData& S, const IntMatrix& U) {
  SurfaceData T = S;
  IntMatrix rows = U * IntMatrix::from_rows(S.rows, 2);
  T.rows.clear();
  for (std::size_t i = 0; i < rows.rows(); ++i) T.rows.push_back(rows.row(i));
  if (S.form) {
    IntMatrix ut(U.cols(), U.rows());
    for (std::size_t i = 0; i < U.rows(); ++i)
      for (std::size_t j = 0; j < U.cols(); ++j) ut(j, i) = U(i, j);
    T.form = U * *S.form * ut;
  }
  if (S.k_row) T.k_row = U * *S.k_row;
  return T;
}

// psi_k validator.

struct PsiEntry {
  Word element;
  std::vector<IntVec> value;  // n entries of Z^2, taken modulo Lambda
  std::string rule;           // square | special | conjugate | product | given
  int base = -1;              // conjugate: index of the conjugated entry
  Word conjugator;            // conjugate: element is g^-1 base g
  std::vector<std::pair<int, int>> factors;  // product: (entry index, +1 / -1)
};

struct PsiAssignment {
  int n = 0;
  MonodromyRep theta;
  std::vector<PsiEntry> entries;
};

struct PsiVerdict {
  bool ok = true;
  std::vector<std::string> failures;
};

namespace detail {

inline bool zero_mod(const IntMatrix& h, const IntVec& v) { return lattice_contains(h, v); }

inline IntVec sub2(const IntVec& a, const IntVec& b) { return {a[0] - b[0], a[1] - b[1]}; }

}  // namespace detail

inline PsiVerdict psi_validate(const PsiAssignment& P, const std::vector<IntVec>& lambda) {
  PsiVerdict V;
  IntMatrix h = lattice_hnf(lambda, 2);
  auto fail = [&](std::size_t k, const std::string& s) {
    V.ok = false;
    V.failures.push_back("entry " + std::to_string(k + 1) + " (" + P.entries[k].rule + "): " + s);
  };
  auto same = [&](const IntVec& a, const IntVec& b) { return detail::zero_mod(h, detail::sub2(a, b)); };
  for (std::size_t k = 0; k < P.entries.size(); ++k) {
    const auto& E = P.entries[k];
    if (static_cast<int>(E.value.size()) != P.n) { fail(k, "value has wrong length"); continue; }
    if (!perm_is_identity(P.theta.of(E.element))) { fail(k, "element is not in Ker theta"); continue; }
    long long delta = 0;
    for (int x : E.element) delta += x > 0 ? 1 : -1;
    IntVec sum{0, 0};
    for (const auto& v : E.value) { sum[0] += v[0]; sum[1] += v[1]; }
    if (!same(sum, {0, Int(delta)})) fail(k, "sum rule violated: sum " + vec_to_string(sum) + ", degree " + std::to_string(delta));

    if (E.rule == "square") {
      if (E.element.size() != 2 || E.element[0] != E.element[1] || E.element[0] < 0) { fail(k, "not the square of a generator"); continue; }
      auto s = support(P.theta.of({E.element[0]}));
      for (int i = 0; i < P.n; ++i) {
        bool swapped = std::find(s.begin(), s.end(), i) != s.end();
        if (!same(E.value[i], swapped ? IntVec{0, 1} : IntVec{0, 0})) fail(k, "square rule violated at sheet " + std::to_string(i + 1));
      }
    } else if (E.rule == "special") {
      if (E.element.size() != 2 || E.element[0] < 0 || E.element[1] < 0 ||
          P.theta.of({E.element[0]}) != P.theta.of({E.element[1]})) { fail(k, "not a pair of generators with equal theta"); continue; }
      auto s = support(P.theta.of({E.element[0]}));
      bool fwd = same(E.value[s[0]], {-1, 0}) && same(E.value[s[1]], {1, 2});
      bool bwd = same(E.value[s[1]], {-1, 0}) && same(E.value[s[0]], {1, 2});
      if (!fwd && !bwd) fail(k, "special pair value is not ((-1,0),(1,2))");
      for (int i = 0; i < P.n; ++i)
        if (i != s[0] && i != s[1] && !same(E.value[i], {0, 0})) fail(k, "special pair value nonzero off its sheets");
    } else if (E.rule == "conjugate") {
      if (E.base < 0 || E.base >= static_cast<int>(k)) { fail(k, "conjugate of an unknown entry"); continue; }
      const auto& B = P.entries[E.base];
      if (reduce(E.element) != reduce(concat(inverse(E.conjugator), B.element, E.conjugator))) fail(k, "element is not the stated conjugate");
      Perm sigma = P.theta.of(E.conjugator);
      for (int i = 0; i < P.n; ++i)
        if (!same(E.value[sigma[i]], B.value[i])) { fail(k, "equivariance violated at sheet " + std::to_string(i + 1)); break; }
    } else if (E.rule == "product") {
      Word w;
      std::vector<IntVec> want(P.n, IntVec{0, 0});
      bool okf = true;
      for (auto [idx, sgn] : E.factors) {
        if (idx < 0 || idx >= static_cast<int>(k)) { okf = false; break; }
        const auto& F = P.entries[idx];
        w = concat(w, sgn > 0 ? F.element : inverse(F.element));
        for (int i = 0; i < P.n; ++i) {
          want[i][0] += sgn * F.value[i][0];
          want[i][1] += sgn * F.value[i][1];
        }
      }
      if (!okf) { fail(k, "product of unknown entries"); continue; }
      if (reduce(w) != reduce(E.element)) fail(k, "element is not the stated product");
      for (int i = 0; i < P.n; ++i)
        if (!same(E.value[i], want[i])) { fail(k, "value is not the sum of the factors"); break; }
    } else if (E.rule != "given") {
      fail(k, "unknown rule");
    }
  }
  return V;
}

namespace detail {

inline IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

inline IntVec flatten(const std::vector<IntVec>& value) {
  IntVec v;
  for (const auto& x : value) { v.push_back(x[0]); v.push_back(x[1]); }
  return v;
}

// Invariants of <big> / <small>, assuming <small> is contained in <big>.
inline std::optional<InvariantFactors> subquotient_invariants(const std::vector<IntVec>& big,
                                                              const std::vector<IntVec>& small, std::size_t dim) {
  IntMatrix B = lattice_hnf(big, dim);
  if (B.rows() == 0) return InvariantFactors{};
  IntMatrix Bt = transpose(B);
  std::vector<IntVec> coords;
  for (const auto& s : small) {
    auto c = solve_integer_system(Bt, s);
    if (!c) return std::nullopt;
    coords.push_back(*c);
  }
  return quotient_invariants(B.rows(), coords);
}

}  // namespace detail

struct SurjectivityReport {
  bool inside_gamma = true;   // every value has sum in Lambda
  bool generates = false;     // span + Lambda^n equals the sum-in-Lambda lattice
  InvariantFactors image;     // of span / Lambda^n
  InvariantFactors expected;  // (Z^2/Lambda)^(n-1)
};

inline SurjectivityReport check_surjectivity(int n, const std::vector<std::vector<IntVec>>& values,
                                             const std::vector<IntVec>& lambda) {
  SurjectivityReport R;
  const std::size_t dim = 2 * static_cast<std::size_t>(n);
  IntMatrix h = lattice_hnf(lambda, 2);
  std::vector<IntVec> lam_n, span, full;
  for (int i = 0; i < n; ++i)
    for (const auto& l : lambda) {
      IntVec v(dim);
      v[2 * i] = l[0];
      v[2 * i + 1] = l[1];
      lam_n.push_back(v);
    }
  for (const auto& val : values) {
    IntVec v = detail::flatten(val);
    IntVec s{0, 0};
    for (int i = 0; i < n; ++i) { s[0] += v[2 * i]; s[1] += v[2 * i + 1]; }
    if (!lattice_contains(h, s)) R.inside_gamma = false;
    span.push_back(v);
  }
  for (int i = 0; i + 1 < n; ++i)
    for (int c = 0; c < 2; ++c) {
      IntVec v(dim);
      v[2 * i + c] = 1;
      v[2 * (n - 1) + c] = -1;
      full.push_back(v);
    }
  std::vector<IntVec> m1 = span, p = full;
  m1.insert(m1.end(), lam_n.begin(), lam_n.end());
  p.insert(p.end(), lam_n.begin(), lam_n.end());
  R.generates = R.inside_gamma && lattice_equal(m1, p, dim);
  R.image = detail::subquotient_invariants(m1, lam_n, dim).value_or(InvariantFactors{});
  std::vector<IntVec> blocks;
  for (int i = 0; i + 1 < n; ++i)
    for (const auto& l : lambda) {
      IntVec v(dim - 2);
      v[2 * i] = l[0];
      v[2 * i + 1] = l[1];
      blocks.push_back(v);
    }
  R.expected = quotient_invariants(dim - 2, blocks);
  return R;
}

// Builds the Theorem 1.5 generating family for theta: squares of all
// generators, one special pair, the differences gamma^2 gamma'^-2 over
// adjacent transpositions, the special pair divided by a square, and their
// closure under conjugation by single generators (deduplicated by value).
inline PsiAssignment theorem15_family(const MonodromyRep& theta, int special_first, int special_second,
                                      std::size_t max_entries = 4000) {
  PsiAssignment P;
  P.n = theta.degree;
  P.theta = theta;
  const int G = static_cast<int>(theta.images.size());
  const int n = P.n;
  auto zero = [&]() { return std::vector<IntVec>(n, IntVec{0, 0}); };
  std::vector<int> square_of(G + 1, -1);
  for (int g = 1; g <= G; ++g) {
    PsiEntry e;
    e.element = {g, g};
    e.rule = "square";
    e.value = zero();
    for (int i : support(theta.images[g - 1])) e.value[i] = {0, 1};
    square_of[g] = static_cast<int>(P.entries.size());
    P.entries.push_back(e);
  }
  if (theta.images.at(special_first - 1) != theta.images.at(special_second - 1))
    throw std::invalid_argument("special pair needs equal theta images");
  PsiEntry sp;
  sp.element = {special_first, special_second};
  sp.rule = "special";
  sp.value = zero();
  auto s = support(theta.images[special_first - 1]);
  sp.value[s[0]] = {-1, 0};
  sp.value[s[1]] = {1, 2};
  int special = static_cast<int>(P.entries.size());
  P.entries.push_back(sp);

  std::set<IntVec> seen;
  std::vector<int> frontier;
  auto add_derived = [&](PsiEntry e) {
    IntVec key = detail::flatten(e.value);
    if (!seen.insert(key).second) return;
    frontier.push_back(static_cast<int>(P.entries.size()));
    P.entries.push_back(std::move(e));
  };
  for (int a = 1; a <= G; ++a)
    for (int b = 1; b <= G; ++b) {
      auto sa = support(theta.images[a - 1]), sb = support(theta.images[b - 1]);
      std::vector<int> common;
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
      if (common.size() != 1) continue;
      PsiEntry e;
      e.rule = "product";
      e.factors = {{square_of[a], 1}, {square_of[b], -1}};
      e.element = reduce(concat({a, a}, {-b, -b}));
      e.value = zero();
      for (int i : sa) e.value[i][1] += 1;
      for (int i : sb) e.value[i][1] -= 1;
      add_derived(e);
    }
  {
    PsiEntry e;
    e.rule = "product";
    e.factors = {{special, 1}, {square_of[special_second], -1}};
    e.element = reduce(concat(P.entries[special].element, {-special_second, -special_second}));
    e.value = P.entries[special].value;
    for (int i : s) e.value[i][1] -= 1;
    add_derived(e);
  }
  while (!frontier.empty() && P.entries.size() < max_entries) {
    std::vector<int> current;
    current.swap(frontier);
    for (int idx : current)
      for (int g = 1; g <= G && P.entries.size() < max_entries; ++g) {
        PsiEntry e;
        e.rule = "conjugate";
        e.base = idx;
        e.conjugator = {g};
        e.element = reduce(concat(Word{-g}, P.entries[idx].element, Word{g}));
        e.value = zero();
        const Perm& sigma = theta.images[g - 1];
        for (int i = 0; i < n; ++i) e.value[sigma[i]] = P.entries[idx].value[i];
        add_derived(e);
      }
  }
  return P;
}

inline std::vector<std::vector<IntVec>> kernel_plus_values(const PsiAssignment& P) {
  std::vector<std::vector<IntVec>> out;
  for (const auto& e : P.entries) {
    long long delta = 0;
    for (int x : e.element) delta += x > 0 ? 1 : -1;
    if (delta == 0) out.push_back(e.value);
  }
  return out;
}

}  // namespace stab

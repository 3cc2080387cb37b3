// Braid monodromy: the Artin action on free groups, braid factorizations,
// Zariski-Van Kampen relations, stabilization and the monodromy
// representation theta.
#pragma once

#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabgrp/words.hpp"

namespace stab {

// Braid words are Words in the Artin generators X_1..X_{d-1}; free words are
// Words in g_1..g_d.

inline void check_braid_word(const Word& b, int strands) {
  for (int x : b)
    if (x == 0 || std::abs(x) >= strands)
      throw std::invalid_argument("braid letter out of range for " + std::to_string(strands) + " strands");
}

inline void check_free_word(const Word& w, int rank) {
  for (int x : w)
    if (x == 0 || std::abs(x) > rank)
      throw std::invalid_argument("free letter out of range for rank " + std::to_string(rank));
}

namespace detail {

// Image of the generator g_k under a single Artin letter.
inline Word artin_letter_image(int letter, int k) {
  int i = std::abs(letter);
  if (k != i && k != i + 1) return {k};
  if (letter > 0) return k == i ? Word{i, i + 1, -i} : Word{i};
  return k == i ? Word{i + 1} : Word{-(i + 1), i, i + 1};
}

inline Word apply_letter(int letter, const Word& w) {
  Word out;
  out.reserve(w.size() + 4);
  for (int x : w) {
    Word img = artin_letter_image(letter, std::abs(x));
    if (x < 0) img = inverse(img);
    out.insert(out.end(), img.begin(), img.end());
  }
  return reduce(out);
}

}  // namespace detail

// Right action: X_i sends g_i -> g_i g_{i+1} g_i^-1, g_{i+1} -> g_i; the
// letters of b act left to right, so action(b1 b2, w) = action(b2, action(b1, w)).
inline Word artin_action(const Word& b, const Word& w, int strands) {
  check_braid_word(b, strands);
  check_free_word(w, strands);
  Word cur = reduce(w);
  for (int x : b) cur = detail::apply_letter(x, cur);
  return cur;
}

// sigma: the letters' transpositions composed left to right ("then").
inline Perm braid_permutation(const Word& b, int strands) {
  check_braid_word(b, strands);
  Perm p = perm_identity(strands);
  for (int x : b) {
    int i = std::abs(x) - 1;
    for (int& v : p) {
      if (v == i) v = i + 1;
      else if (v == i + 1) v = i;
    }
  }
  return p;
}

inline long long braid_degree(const Word& b) {
  long long d = 0;
  for (int x : b) d += (x > 0 ? 1 : -1);
  return d;
}

// Positive half twist Delta = X_1 (X_2 X_1) ... (X_{d-1} ... X_1).
inline Word half_twist_delta(int strands) {
  Word w;
  for (int k = 1; k < strands; ++k)
    for (int i = k; i >= 1; --i) w.push_back(i);
  return w;
}

inline Word full_twist(int strands) { return concat(half_twist_delta(strands), half_twist_delta(strands)); }

inline Word generator_product(int d) {
  Word w;
  for (int i = 1; i <= d; ++i) w.push_back(i);
  return w;
}

struct HalfTwistSpec {
  Word conjugator;  // w in w X_core w^-1
  int core = 1;
};

struct Factor {
  HalfTwistSpec twist;
  int exponent = 1;
};

struct BraidFactorization {
  int strands = 2;
  std::vector<Factor> factors;
};

inline void check_factor(const Factor& f, int strands) {
  if (f.twist.core < 1 || f.twist.core >= strands) throw std::invalid_argument("factor core index out of range");
  check_braid_word(f.twist.conjugator, strands);
  if (f.exponent != 1 && f.exponent != 2 && f.exponent != -2 && f.exponent != 3)
    throw std::invalid_argument("factor exponent must be 1, 2, -2 or 3");
}

inline Word factor_word(const Factor& f) {
  Word core = power(Word{f.twist.core}, f.exponent);
  return concat(f.twist.conjugator, core, inverse(f.twist.conjugator));
}

inline Word product_word(const BraidFactorization& F) {
  Word w;
  for (const auto& f : F.factors) {
    Word fw = factor_word(f);
    w.insert(w.end(), fw.begin(), fw.end());
  }
  return w;
}

struct DeltaVerdict {
  bool ok = false;
  bool partial = false;
  long long degree = 0;
  long long expected_degree = 0;
  std::string reason;
};

inline DeltaVerdict check_delta_squared(const BraidFactorization& F) {
  const int d = F.strands;
  DeltaVerdict v;
  for (const auto& f : F.factors) check_factor(f, d);
  Word b = product_word(F);
  v.degree = braid_degree(b);
  v.expected_degree = static_cast<long long>(d) * (d - 1);
  if (v.degree != v.expected_degree) {
    v.partial = v.degree < v.expected_degree;
    v.reason = (v.partial ? "partial factorization: " : "") + std::string("degree ") +
               std::to_string(v.degree) + " != " + std::to_string(v.expected_degree);
    return v;
  }
  if (!perm_is_identity(braid_permutation(b, d))) {
    v.reason = "induced permutation is not the identity";
    return v;
  }
  // Delta^2 acts as g -> (g_1...g_d) g (g_1...g_d)^-1 under this convention.
  Word prod = generator_product(d);
  for (int j = 1; j <= d; ++j) {
    if (artin_action(b, {j}, d) != conjugate({j}, prod)) {
      v.reason = "action on g" + std::to_string(j) + " is not conjugation by g1...gd";
      return v;
    }
  }
  v.ok = true;
  return v;
}

// Adjacent Hurwitz move on factors j, j+1: (b, c) -> (b c b^-1, b).
inline BraidFactorization hurwitz_move(const BraidFactorization& F, std::size_t j) {
  if (j + 1 >= F.factors.size()) throw std::out_of_range("hurwitz move index");
  BraidFactorization G = F;
  const Factor& b = F.factors[j];
  const Factor& c = F.factors[j + 1];
  Factor moved = c;
  moved.twist.conjugator = reduce(concat(factor_word(b), c.twist.conjugator));
  G.factors[j] = moved;
  G.factors[j + 1] = b;
  return G;
}

// rho^power on a pair, rho(a, b) = (b, b a b^-1).
inline std::pair<Word, Word> twist_action(std::pair<Word, Word> pr, int power_) {
  for (int k = 0; k < std::abs(power_); ++k) {
    const Word a = pr.first, b = pr.second;
    if (power_ > 0) pr = {b, conjugate(a, b)};
    else pr = {conjugate(b, inverse(a)), a};
  }
  return pr;
}

enum class RelationKind { tangency, node, cusp, projective, stabilization, other };

inline const char* kind_name(RelationKind k) {
  switch (k) {
    case RelationKind::tangency: return "tangency";
    case RelationKind::node: return "node";
    case RelationKind::cusp: return "cusp";
    case RelationKind::projective: return "projective";
    case RelationKind::stabilization: return "stabilization";
    default: return "other";
  }
}

struct TaggedRelation {
  RelationKind kind = RelationKind::other;
  Word relator;
  Word gamma1, gamma2;  // empty for projective/other
  std::string origin;
};

// A presentation together with the geometric meaning of its relators.
struct TaggedPresentation {
  Presentation presentation;
  std::vector<TaggedRelation> relations;

  void add(TaggedRelation r) {
    r.relator = reduce(r.relator);
    presentation.add(r.relator);
    relations.push_back(std::move(r));
  }
};

inline std::pair<Word, Word> factor_pair(const Factor& f, int strands) {
  Word winv = inverse(f.twist.conjugator);
  return {artin_action(winv, {f.twist.core}, strands), artin_action(winv, {f.twist.core + 1}, strands)};
}

inline TaggedRelation relation_for(const Word& g1, const Word& g2, int exponent) {
  TaggedRelation r;
  r.gamma1 = g1;
  r.gamma2 = g2;
  switch (exponent) {
    case 1:
      r.kind = RelationKind::tangency;
      r.relator = reduce(concat(g1, inverse(g2)));
      break;
    case 2:
    case -2:
      r.kind = RelationKind::node;
      r.relator = commutator(g1, g2);
      break;
    case 3:
      r.kind = RelationKind::cusp;
      r.relator = reduce(concat(g1, g2, g1, inverse(concat(g2, g1, g2))));
      break;
    default:
      throw std::invalid_argument("unsupported exponent");
  }
  return r;
}

inline TaggedPresentation vk_presentation(const BraidFactorization& F, bool projective) {
  TaggedPresentation P;
  P.presentation.generators = F.strands;
  for (std::size_t k = 0; k < F.factors.size(); ++k) {
    const Factor& f = F.factors[k];
    check_factor(f, F.strands);
    auto [g1, g2] = factor_pair(f, F.strands);
    TaggedRelation r = relation_for(g1, g2, f.exponent);
    r.origin = "factor " + std::to_string(k + 1);
    P.add(r);
  }
  if (projective) {
    TaggedRelation r;
    r.kind = RelationKind::projective;
    r.relator = generator_product(F.strands);
    r.origin = "projective";
    P.add(r);
  }
  return P;
}

struct MonodromyRep {
  int degree = 0;
  std::vector<Perm> images;  // one transposition per generator

  Perm of(const Word& w) const {
    Perm p = perm_identity(degree);
    for (int x : w) {
      if (x == 0 || std::abs(x) > static_cast<int>(images.size()))
        throw std::invalid_argument("word letter outside the monodromy domain");
      const Perm& g = images[std::abs(x) - 1];
      p = perm_then(p, x > 0 ? g : perm_inverse(g));
    }
    return p;
  }

  bool transitive() const {
    if (degree == 0) return false;
    std::vector<bool> seen(degree);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (const auto& g : images)
        if (!seen[g[x]]) { seen[g[x]] = true; stack.push_back(g[x]); }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }
};

// theta from 1-based point pairs.
inline MonodromyRep make_theta(int degree, const std::vector<std::pair<int, int>>& pairs) {
  MonodromyRep t;
  t.degree = degree;
  for (auto [a, b] : pairs) {
    if (a < 1 || b < 1 || a > degree || b > degree || a == b)
      throw std::invalid_argument("theta image must be a transposition of points in 1..n");
    t.images.push_back(transposition(degree, a - 1, b - 1));
  }
  return t;
}

struct ThetaVerdict {
  bool ok = true;
  bool transitive = false;
  std::vector<std::string> violations;
};

inline ThetaVerdict validate_theta(const TaggedPresentation& P, const MonodromyRep& theta) {
  ThetaVerdict v;
  auto fail = [&](std::string s) {
    v.ok = false;
    v.violations.push_back(std::move(s));
  };
  if (static_cast<int>(theta.images.size()) != P.presentation.generators)
    fail("theta has " + std::to_string(theta.images.size()) + " images for " +
         std::to_string(P.presentation.generators) + " generators");
  for (std::size_t i = 0; i < theta.images.size(); ++i)
    if (!is_transposition(theta.images[i])) fail("image of g" + std::to_string(i + 1) + " is not a transposition");
  v.transitive = theta.transitive();
  if (!v.transitive) fail("image is not transitive");
  if (!v.ok) return v;

  for (std::size_t k = 0; k < P.presentation.relators.size(); ++k)
    if (!perm_is_identity(theta.of(P.presentation.relators[k])))
      fail("relator " + std::to_string(k + 1) + " does not map to the identity");
  for (const auto& r : P.relations) {
    if (r.gamma1.empty() || r.gamma2.empty()) continue;
    auto s1 = support(theta.of(r.gamma1)), s2 = support(theta.of(r.gamma2));
    std::vector<int> common;
    std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(common));
    std::string where = std::string(kind_name(r.kind)) + " relation (" + r.origin + ")";
    switch (r.kind) {
      case RelationKind::tangency:
        if (s1 != s2) fail(where + ": images differ");
        break;
      case RelationKind::node:
      case RelationKind::stabilization:
        if (!common.empty()) fail(where + ": images not disjoint");
        break;
      case RelationKind::cusp:
        if (common.size() != 1) fail(where + ": images not adjacent");
        break;
      default:
        break;
    }
  }
  return v;
}

inline ThetaVerdict validate_theta(const Presentation& P, const MonodromyRep& theta) {
  TaggedPresentation T;
  T.presentation = P;
  return validate_theta(T, theta);
}

// Reduced words of length <= depth in the generators and their inverses.
inline std::vector<Word> words_up_to(int rank, int depth) {
  std::vector<Word> all{{}};
  std::vector<Word> frontier{{}};
  for (int len = 1; len <= depth; ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (int g = -rank; g <= rank; ++g) {
        if (g == 0 || (!w.empty() && w.back() == -g)) continue;
        Word x = w;
        x.push_back(g);
        next.push_back(x);
      }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return all;
}

// Adds [c1, c2] for conjugates c = w g_i w^-1 (|w| <= depth) whose theta
// images are disjoint transpositions. Generators are never added.
inline TaggedPresentation stabilize(const TaggedPresentation& P, const MonodromyRep& theta, int depth) {
  const int d = P.presentation.generators;
  std::vector<Word> conj;
  std::set<Word> seen;
  for (const auto& w : words_up_to(d, depth))
    for (int i = 1; i <= d; ++i) {
      Word c = conjugate({i}, w);
      if (seen.insert(c).second) conj.push_back(c);
    }
  std::vector<std::vector<int>> supp;
  for (const auto& c : conj) supp.push_back(support(theta.of(c)));

  TaggedPresentation out = P;
  std::set<Word> have;
  for (const auto& r : out.presentation.relators) have.insert(cyclic_normal_form(r));
  for (std::size_t a = 0; a < conj.size(); ++a)
    for (std::size_t b = a + 1; b < conj.size(); ++b) {
      const auto& s = supp[a];
      const auto& t = supp[b];
      if (s.size() != 2 || t.size() != 2) continue;
      if (s[0] == t[0] || s[0] == t[1] || s[1] == t[0] || s[1] == t[1]) continue;
      Word rel = commutator(conj[a], conj[b]);
      if (rel.empty() || !have.insert(cyclic_normal_form(rel)).second) continue;
      TaggedRelation r;
      r.kind = RelationKind::stabilization;
      r.relator = rel;
      r.gamma1 = conj[a];
      r.gamma2 = conj[b];
      r.origin = "stabilization";
      out.add(r);
    }
  return out;
}

}  // namespace stab

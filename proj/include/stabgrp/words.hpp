// Words in free groups and braid groups, permutations, presentations.
//
// A word is a list of signed 1-based generator indices: +k is the k-th
// generator, -k its inverse.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stab {

using Word = std::vector<int>;

inline Word reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (x == 0) throw std::invalid_argument("zero letter in word");
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  return out;
}

inline Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

template <typename... Ws>
Word concat(const Word& a, const Word& b, const Ws&... rest) {
  return concat(concat(a, b), rest...);
}

inline Word power(const Word& w, int e) {
  Word base = e < 0 ? inverse(w) : w, out;
  for (int i = 0; i < std::abs(e); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

inline Word commutator(const Word& a, const Word& b) {
  return reduce(concat(a, b, inverse(a), inverse(b)));
}

inline Word conjugate(const Word& x, const Word& w) {  // w x w^-1
  return reduce(concat(w, x, inverse(w)));
}

inline Word cyclic_reduce(Word w) {
  w = reduce(w);
  std::size_t a = 0, b = w.size();
  while (b - a >= 2 && w[a] == -w[b - 1]) { ++a; --b; }
  return Word(w.begin() + a, w.begin() + b);
}

// Canonical representative of a relator up to cyclic rotation and inversion.
inline Word cyclic_normal_form(const Word& w) {
  Word c = cyclic_reduce(w);
  if (c.empty()) return c;
  Word best;
  bool have = false;
  for (const Word& base : {c, inverse(c)})
    for (std::size_t r = 0; r < base.size(); ++r) {
      Word rot(base.begin() + r, base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + r);
      if (!have || rot < best) { best = rot; have = true; }
    }
  return best;
}

inline int max_index(const Word& w) {
  int m = 0;
  for (int x : w) m = std::max(m, std::abs(x));
  return m;
}

inline std::vector<long long> exponent_sums(const Word& w, int rank) {
  std::vector<long long> v(rank, 0);
  for (int x : w) {
    if (std::abs(x) > rank) throw std::invalid_argument("letter out of range");
    v[std::abs(x) - 1] += (x > 0 ? 1 : -1);
  }
  return v;
}

inline std::string word_to_string(const Word& w, const std::string& sym = "g") {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << sym << std::abs(w[i]);
    if (w[i] < 0) os << "^-1";
  }
  return os.str();
}

// Permutations of {0..n-1} as image arrays.
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm transposition(int n, int a, int b) {  // 0-based points
  Perm p = perm_identity(n);
  std::swap(p[a], p[b]);
  return p;
}

// Product "p then q": x -> q[p[x]]. Used for right actions on sheets.
inline Perm perm_then(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[x] = q[p[x]];
  return r;
}

inline Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[p[x]] = static_cast<int>(x);
  return r;
}

inline bool perm_is_identity(const Perm& p) {
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p[x] != static_cast<int>(x)) return false;
  return true;
}

// Moved points of p.
inline std::vector<int> support(const Perm& p) {
  std::vector<int> s;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p[x] != static_cast<int>(x)) s.push_back(static_cast<int>(x));
  return s;
}

inline bool is_transposition(const Perm& p) {
  auto s = support(p);
  return s.size() == 2 && p[s[0]] == s[1];
}

inline int inversions(const Perm& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) c += p[i] > p[j];
  return c;
}

inline std::string perm_to_cycles(const Perm& p) {
  std::vector<bool> seen(p.size());
  std::ostringstream os;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s] || p[s] == static_cast<int>(s)) continue;
    os << '(';
    std::size_t x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      os << (first ? "" : " ") << x + 1;
      first = false;
      x = p[x];
    }
    os << ')';
  }
  std::string r = os.str();
  return r.empty() ? "()" : r;
}

struct Presentation {
  int generators = 0;
  std::vector<Word> relators;

  void add(const Word& r) {
    Word w = reduce(r);
    if (max_index(w) > generators) throw std::invalid_argument("relator uses unknown generator");
    if (!w.empty()) relators.push_back(w);
  }

  // Drops relators that coincide up to rotation and inversion.
  void deduplicate() {
    std::set<Word> seen;
    std::vector<Word> kept;
    for (auto& r : relators)
      if (seen.insert(cyclic_normal_form(r)).second) kept.push_back(r);
    relators = std::move(kept);
  }
};

}  // namespace stab

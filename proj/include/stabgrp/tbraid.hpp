// Exact arithmetic in the reduced braid group
//   B~_n = B_n / [X_2, X_3^-1 X_1^-1 X_2 X_1 X_3]
// via normal forms section(pi) * t with t in P~_n, where P~_n is generated
// by s_1 = x_1^2, u_1..u_{n-1} and the central involution eta.
#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "stabgrp/braidvk.hpp"
#include "stabgrp/intlinalg.hpp"
#include "stabgrp/words.hpp"

namespace stab {

// s_1^alpha u_1^beta_1 ... u_{n-1}^beta_{n-1} eta^eps
struct PTildeElem {
  long long alpha = 0;
  std::vector<long long> beta;
  int eps = 0;

  bool operator==(const PTildeElem& o) const { return alpha == o.alpha && beta == o.beta && eps == o.eps; }
  bool operator!=(const PTildeElem& o) const { return !(*this == o); }
  bool operator<(const PTildeElem& o) const {
    return std::tie(alpha, beta, eps) < std::tie(o.alpha, o.beta, o.eps);
  }
};

struct BTildeElem {
  Perm pi;
  PTildeElem t;

  bool operator==(const BTildeElem& o) const { return pi == o.pi && t == o.t; }
  bool operator!=(const BTildeElem& o) const { return !(*this == o); }
};

struct BTilde2Elem {
  BTildeElem x, y;
  bool operator==(const BTilde2Elem& o) const { return x == o.x && y == o.y; }
};

inline std::string to_string(const PTildeElem& t) {
  std::ostringstream os;
  os << "s1^" << t.alpha << " u^(";
  for (std::size_t i = 0; i < t.beta.size(); ++i) os << (i ? "," : "") << t.beta[i];
  os << ") eta^" << t.eps;
  return os.str();
}

inline std::string to_string(const BTildeElem& g) { return perm_to_cycles(g.pi) + " " + to_string(g.t); }

inline std::ostream& operator<<(std::ostream& os, const PTildeElem& t) { return os << to_string(t); }
inline std::ostream& operator<<(std::ostream& os, const BTildeElem& g) { return os << to_string(g); }
inline std::ostream& operator<<(std::ostream& os, const BTilde2Elem& p) { return os << "(" << p.x << "; " << p.y << ")"; }

struct HalfTwistClass {
  int a = 0, b = 0;  // 1-based endpoints, a < b
  long long k = 0;
};

class TBraidGroup {
 public:
  explicit TBraidGroup(int n) : n_(n) {
    if (n < 3) throw std::invalid_argument("reduced braid groups are modelled for n >= 3");
    build_action_tables();
    sq_.resize(n_);
    sq_[1] = s1();
    for (int i = 1; i + 1 < n_; ++i) sq_[i + 1] = act(-i, act(-(i + 1), sq_[i]));
    build_generator_words();
  }

  int n() const { return n_; }

  // --- P~_n -------------------------------------------------------------

  PTildeElem p_identity() const { return {0, std::vector<long long>(n_ - 1, 0), 0}; }
  PTildeElem s1() const { auto t = p_identity(); t.alpha = 1; return t; }
  PTildeElem u(int i) const {
    check_index(i);
    auto t = p_identity();
    t.beta[i - 1] = 1;
    return t;
  }
  PTildeElem eta() const { auto t = p_identity(); t.eps = 1; return t; }

  // Parity of eta-flips reordering t * t' into normal order.
  int cocycle(const PTildeElem& t, const PTildeElem& tp) const {
    long long c = 0;
    if (n_ - 1 >= 2) c += tp.alpha * t.beta[1];
    for (int i = 0; i + 1 < n_ - 1; ++i) c += tp.beta[i] * t.beta[i + 1];
    return static_cast<int>(((c % 2) + 2) % 2);
  }

  PTildeElem mul(const PTildeElem& t, const PTildeElem& tp) const {
    check_size(t);
    check_size(tp);
    PTildeElem r = t;
    r.alpha += tp.alpha;
    for (int i = 0; i < n_ - 1; ++i) r.beta[i] += tp.beta[i];
    r.eps = (t.eps + tp.eps + cocycle(t, tp)) % 2;
    return r;
  }

  PTildeElem inv(const PTildeElem& t) const {
    PTildeElem r = p_identity();
    r.alpha = -t.alpha;
    for (int i = 0; i < n_ - 1; ++i) r.beta[i] = -t.beta[i];
    r.eps = (t.eps + cocycle(t, r)) % 2;
    return r;
  }

  PTildeElem pow(const PTildeElem& t, long long k) const {
    if (k < 0) return pow(inv(t), -k);
    PTildeElem r = t;
    r.alpha *= k;
    for (auto& b : r.beta) b *= k;
    int tri = (k % 4) >= 2;  // k(k-1)/2 mod 2
    r.eps = static_cast<int>(((k % 2) * t.eps + cocycle(t, t) * tri) % 2);
    return r;
  }

  // letter +i: x_i^-1 t x_i; letter -i: x_i t x_i^-1.
  PTildeElem act(int letter, const PTildeElem& t) const {
    int i = std::abs(letter);
    check_index(i);
    const auto& img = letter > 0 ? pos_[i] : neg_[i];
    PTildeElem r = pow(img[0], t.alpha);
    for (int j = 1; j < n_; ++j)
      if (t.beta[j - 1] != 0) r = mul(r, pow(img[j], t.beta[j - 1]));
    if (t.eps) r = mul(r, eta());
    return r;
  }

  // Normal form of x_i^2.
  const PTildeElem& square(int i) const {
    check_index(i);
    return sq_[i];
  }

  // --- B~_n -------------------------------------------------------------

  BTildeElem identity() const { return {perm_identity(n_), p_identity()}; }
  BTildeElem embed(const PTildeElem& t) const { return {perm_identity(n_), t}; }
  BTildeElem x(int i) const { return times_letter(identity(), i); }

  BTildeElem times_letter(const BTildeElem& g, int letter) const {
    int i = std::abs(letter);
    check_index(i);
    int a = i - 1, b = i;
    int pa = position(g.pi, a), pb = position(g.pi, b);
    BTildeElem r;
    r.pi = g.pi;
    std::swap(r.pi[pa], r.pi[pb]);
    PTildeElem tt = act(letter, g.t);
    if (letter > 0) r.t = pa < pb ? tt : mul(sq_[i], tt);
    else r.t = pa > pb ? tt : mul(inv(sq_[i]), tt);
    return r;
  }

  BTildeElem eval(const Word& w) const {
    check_braid_word(w, n_);
    BTildeElem g = identity();
    for (int x : w) g = times_letter(g, x);
    return g;
  }

  BTildeElem mul(const BTildeElem& g, const BTildeElem& h) const {
    BTildeElem r = g;
    for (int x : section(h.pi)) r = times_letter(r, x);
    r.t = mul(r.t, h.t);
    return r;
  }

  BTildeElem inv(const BTildeElem& g) const {
    BTildeElem r = embed(inv(g.t));
    Word s = section(g.pi);
    for (auto it = s.rbegin(); it != s.rend(); ++it) r = times_letter(r, -*it);
    return r;
  }

  BTildeElem conj(const BTildeElem& g, const BTildeElem& c) const { return mul(mul(c, g), inv(c)); }

  BTildeElem commutator(const BTildeElem& a, const BTildeElem& b) const {
    return mul(mul(a, b), mul(inv(a), inv(b)));
  }

  bool is_identity(const BTildeElem& g) const { return g == identity(); }

  long long delta(const BTildeElem& g) const { return inversions(g.pi) + 2 * g.t.alpha; }

  bool in_p0(const BTildeElem& g) const { return perm_is_identity(g.pi) && g.t.alpha == 0; }

  // Lexicographically least reduced word (sigma composed left to right).
  Word section(const Perm& pi) const {
    {
      std::shared_lock lock(cache_mutex_);
      auto it = sections_.find(pi);
      if (it != sections_.end()) return it->second;
    }
    Word w;
    Perm p = pi;
    for (;;) {
      int j = 0;
      while (j + 1 < n_ && p[j] < p[j + 1]) ++j;
      if (j + 1 >= n_) break;
      w.push_back(j + 1);
      std::swap(p[j], p[j + 1]);
    }
    std::unique_lock lock(cache_mutex_);
    sections_.emplace(pi, w);
    return w;
  }

  // --- words for the P~_n generators -------------------------------------

  Word s1_word() const { return {1, 1}; }
  Word eta_word() const { return {1, 1, 2, 2, -1, -1, -2, -2}; }
  // Validated word for u_i; see u_word_correction().
  const Word& u_word(int i) const {
    check_index(i);
    return u_words_[i];
  }
  // Letters whose defining word evaluated to u_i * eta and was corrected.
  const std::vector<int>& u_word_correction() const { return corrected_; }
  // Letters whose defining word does not evaluate to u_i even up to eta.
  const std::vector<int>& u_word_mismatch() const { return mismatched_; }

  // Word for a P~ normal form and for a B~ normal form.
  Word word_of(const PTildeElem& t) const {
    Word w = power(s1_word(), static_cast<int>(t.alpha));
    for (int j = 1; j < n_; ++j) w = concat(w, power(u_words_[j], static_cast<int>(t.beta[j - 1])));
    if (t.eps) w = concat(w, eta_word());
    return w;
  }
  Word word_of(const BTildeElem& g) const { return concat(section(g.pi), word_of(g.t)); }

  // --- half twists ------------------------------------------------------

  // Positive word c with sigma(c) sending a -> 1, b -> 2.
  Word standard_conjugator(int a, int b) const {
    Word c;
    for (int j = a - 1; j >= 1; --j) c.push_back(j);
    for (int j = b - 1; j >= 2; --j) c.push_back(j);
    return c;
  }

  // x_1 u_1^k eta^{k(k-1)/2}
  BTildeElem local_halftwist(long long k) const {
    PTildeElem t = pow(u(1), k);
    t.eps = tri_parity(k);
    BTildeElem x1 = x(1);
    return mul(x1, embed(t));
  }

  BTildeElem halftwist(int a, int b, long long k) const {
    check_endpoints(a, b);
    BTildeElem c = eval(standard_conjugator(a, b));
    return conj(local_halftwist(k), c);
  }

  BTildeElem halftwist(int a, int b, long long k, const Word& path_witness) const {
    check_endpoints(a, b);
    BTildeElem c = eval(path_witness);
    BTildeElem h = conj(local_halftwist(k), c);
    auto s = support(h.pi);
    if (s != std::vector<int>{a - 1, b - 1}) throw std::invalid_argument("path witness does not join the endpoints");
    return h;
  }

  std::optional<HalfTwistClass> classify_halftwist(const BTildeElem& g) const {
    if (!is_transposition(g.pi)) return std::nullopt;
    auto s = support(g.pi);
    int a = s[0] + 1, b = s[1] + 1;
    BTildeElem c = eval(standard_conjugator(a, b));
    BTildeElem h = mul(mul(inv(c), g), c);
    if (h.pi != transposition(n_, 0, 1)) return std::nullopt;
    // h = x_1 t; the pure part must be u_1^k with the matching eta parity
    const PTildeElem& t = h.t;
    if (t.alpha != 0) return std::nullopt;
    for (int j = 1; j < n_ - 1; ++j)
      if (t.beta[j] != 0) return std::nullopt;
    if (t.eps != tri_parity(t.beta[0])) return std::nullopt;
    return HalfTwistClass{a, b, t.beta[0]};
  }

  // --- automorphisms and pairs ------------------------------------------

  // x_i -> x_i u_i, x_j -> x_j.
  BTildeElem epsilon_auto(int i, const BTildeElem& g) const {
    check_index(i);
    Word img_i = concat(Word{i}, u_words_[i]);
    Word w;
    for (int x : word_of(g)) {
      if (std::abs(x) != i) w.push_back(x);
      else {
        Word piece = x > 0 ? img_i : inverse(img_i);
        w.insert(w.end(), piece.begin(), piece.end());
      }
    }
    return eval(w);
  }

  BTilde2Elem pair_eval(const Word& wx, const Word& wy) const { return make_pair(eval(wx), eval(wy)); }

  BTilde2Elem make_pair(const BTildeElem& x, const BTildeElem& y) const {
    if (x.pi != y.pi || delta(x) != delta(y))
      throw std::invalid_argument("pair components differ in permutation or degree");
    return {x, y};
  }

  BTilde2Elem pair_mul(const BTilde2Elem& p, const BTilde2Elem& q) const { return {mul(p.x, q.x), mul(p.y, q.y)}; }

  BTilde2Elem kappa(const BTildeElem& x, const PTildeElem& u0) const {
    if (!in_p0(embed(u0))) throw std::invalid_argument("kappa needs a degree-zero pure element");
    return make_pair(x, mul(x, embed(u0)));
  }

  // Abelianization of P~_{n,0} (with_s1 = false) or P~_n from the
  // commutation relations computed in the model.
  InvariantFactors pure_abelianization(bool with_s1) const {
    std::vector<PTildeElem> gens;
    if (with_s1) gens.push_back(s1());
    for (int j = 1; j < n_; ++j) gens.push_back(u(j));
    std::size_t m = gens.size() + 1;  // last coordinate: eta
    std::vector<IntVec> rows;
    IntVec eta2(m, 0);
    eta2[m - 1] = 2;
    rows.push_back(eta2);
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = a + 1; b < gens.size(); ++b) {
        PTildeElem c = mul(mul(gens[a], gens[b]), mul(inv(gens[a]), inv(gens[b])));
        IntVec row(m, 0);
        row[m - 1] = c.eps;  // [g_a, g_b] eta^{-c} = 1
        rows.push_back(row);
      }
    return quotient_invariants(m, rows);
  }

 private:
  void check_index(int i) const {
    if (i < 1 || i >= n_) throw std::invalid_argument("generator index out of range");
  }
  void check_size(const PTildeElem& t) const {
    if (static_cast<int>(t.beta.size()) != n_ - 1) throw std::invalid_argument("element size mismatch");
  }
  void check_endpoints(int a, int b) const {
    if (!(1 <= a && a < b && b <= n_)) throw std::invalid_argument("half-twist endpoints must satisfy a < b <= n");
  }
  // k(k-1)/2 mod 2
  static int tri_parity(long long k) { return ((k % 4) + 4) % 4 >= 2; }

  static int position(const Perm& p, int v) {
    for (std::size_t k = 0; k < p.size(); ++k)
      if (p[k] == v) return static_cast<int>(k);
    return -1;
  }

  // pos_[i][0] = image of s_1, pos_[i][j] = image of u_j under t -> x_i^-1 t x_i.
  void build_action_tables() {
    pos_.assign(n_, {});
    neg_.assign(n_, {});
    for (int i = 1; i < n_; ++i) {
      std::vector<PTildeElem> img(n_);
      img[0] = i == 2 ? mul(s1(), inv(u(2))) : s1();
      for (int j = 1; j < n_; ++j) {
        if (std::abs(i - j) >= 2) img[j] = u(j);
        else if (std::abs(i - j) == 1) img[j] = mul(u(i), u(j));
        else img[j] = mul(inv(u(i)), eta());
      }
      pos_[i] = img;
    }
    // The table is an involution on the abelianization, so the inverse
    // image of a generator is its forward image up to eta.
    for (int i = 1; i < n_; ++i) {
      std::vector<PTildeElem> img(n_);
      for (int j = 0; j < n_; ++j) {
        PTildeElem y = j == 0 ? s1() : u(j);
        PTildeElem z = pos_[i][j];
        PTildeElem back = act(i, z);
        if (back.alpha != y.alpha || back.beta != y.beta)
          throw std::logic_error("action table is not invertible as expected");
        if (back.eps != y.eps) z = mul(z, eta());
        img[j] = z;
      }
      neg_[i] = img;
    }
  }

  void build_generator_words() {
    u_words_.assign(n_, {});
    for (int j = 1; j < n_; ++j) {
      Word w;
      if (j <= n_ - 2) w = {-j, j + 1, j + 1, j, -(j + 1), -(j + 1)};
      else w = {j - 1, j - 1, j, -(j - 1), -(j - 1), -j};
      BTildeElem e = eval(w);
      if (e == embed(u(j))) {
        u_words_[j] = w;
      } else if (e == embed(mul(u(j), eta()))) {
        u_words_[j] = concat(w, eta_word());
        corrected_.push_back(j);
      } else {
        u_words_[j] = w;
        mismatched_.push_back(j);
      }
    }
  }

  int n_;
  std::vector<std::vector<PTildeElem>> pos_, neg_;
  std::vector<PTildeElem> sq_;
  std::vector<Word> u_words_;
  std::vector<int> corrected_, mismatched_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::map<Perm, Word> sections_;
};

}  // namespace stab

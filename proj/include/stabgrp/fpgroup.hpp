// Finitely presented group oracle: abelianization, Todd-Coxeter coset
// enumeration (HLT with lookahead), Reidemeister-Schreier.
#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabgrp/braidvk.hpp"
#include "stabgrp/intlinalg.hpp"
#include "stabgrp/words.hpp"

namespace stab {

inline InvariantFactors abelianization(const Presentation& P) {
  std::vector<IntVec> rows;
  for (const auto& r : P.relators) {
    auto e = exponent_sums(r, P.generators);
    if (std::all_of(e.begin(), e.end(), [](long long x) { return x == 0; })) continue;
    rows.emplace_back(e.begin(), e.end());
  }
  return quotient_invariants(P.generators, rows);
}

// Column 2k is generator k+1, column 2k+1 its inverse.
inline int letter_col(int x) { return x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1; }

struct CosetTable {
  int generators = 0;
  std::vector<std::vector<int>> rows;  // rows[coset][col]; coset 0 is the subgroup

  std::size_t index() const { return rows.size(); }
  bool closed() const {
    for (const auto& r : rows)
      for (int v : r)
        if (v < 0) return false;
    return true;
  }
  int act(int coset, const Word& w) const {
    for (int x : w) coset = rows[coset][letter_col(x)];
    return coset;
  }
};

enum class EnumStatus { closed, exceeded };

struct EnumResult {
  EnumStatus status = EnumStatus::exceeded;
  CosetTable table;  // meaningful only when closed
};

namespace detail {

class Enumerator {
 public:
  Enumerator(const Presentation& P, std::size_t max_cosets)
      : gens_(P.generators), cols_(2 * P.generators), max_live_(max_cosets),
        max_alloc_(std::max<std::size_t>(8 * max_cosets, 4096)) {
    for (const auto& r : P.relators) relators_.push_back(cols_of(r));
    new_coset();
  }

  EnumResult run(const std::vector<Word>& subgroup) {
    for (const auto& h : subgroup) {
      scan_and_fill(0, cols_of(reduce(h)));
      if (overflow_) return {};
    }
    for (std::size_t a = 0; a < table_.size(); ++a) {
      for (const auto& r : relators_) {
        if (!live(a)) break;
        scan_and_fill(static_cast<int>(a), r);
        if (overflow_) return {};
      }
      for (int x = 0; x < cols_ && live(a); ++x)
        if (table_[a][x] < 0) {
          define(static_cast<int>(a), x);
          if (overflow_) return {};
        }
    }
    return {EnumStatus::closed, standardize()};
  }

 private:
  std::vector<int> cols_of(const Word& w) const {
    std::vector<int> c;
    for (int x : w) {
      if (std::abs(x) > gens_) throw std::invalid_argument("word uses unknown generator");
      c.push_back(letter_col(x));
    }
    return c;
  }

  bool live(std::size_t a) const { return parent_[a] == static_cast<int>(a); }

  int new_coset() {
    table_.emplace_back(cols_, -1);
    parent_.push_back(static_cast<int>(table_.size()) - 1);
    ++live_count_;
    return static_cast<int>(table_.size()) - 1;
  }

  void define(int a, int x) {
    if (live_count_ >= max_live_) {
      lookahead();
      if (live_count_ >= max_live_ || table_.size() >= max_alloc_) { overflow_ = true; return; }
      if (!live(a) || table_[a][x] >= 0) return;
    }
    if (table_.size() >= max_alloc_) { overflow_ = true; return; }
    int b = new_coset();
    table_[a][x] = b;
    table_[b][x ^ 1] = a;
  }

  void lookahead() {
    for (std::size_t b = 0; b < table_.size(); ++b)
      for (const auto& r : relators_) {
        if (!live(b)) break;
        scan(static_cast<int>(b), r);
      }
  }

  // Traces w from a in both directions; fills a single gap by deduction.
  // Returns false if the gap is wider than one letter.
  bool trace(int a, const std::vector<int>& w, bool fill) {
    for (;;) {
      int f = a, b = a;
      int i = 0, j = static_cast<int>(w.size()) - 1;
      while (i <= j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
      if (i > j) {
        if (f != a) coincidence(f, a);
        return true;
      }
      while (j >= i && table_[b][w[j] ^ 1] >= 0) b = table_[b][w[j--] ^ 1];
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        table_[f][w[i]] = b;
        table_[b][w[i] ^ 1] = f;
        return true;
      }
      if (!fill) return false;
      define(f, w[i]);
      if (overflow_) return false;
    }
  }

  void scan_and_fill(int a, const std::vector<int>& w) { trace(a, w, true); }
  void scan(int a, const std::vector<int>& w) { trace(a, w, false); }

  int rep(int k) {
    int l = k;
    while (parent_[l] != l) l = parent_[l];
    while (parent_[k] != l) {
      int next = parent_[k];
      parent_[k] = l;
      k = next;
    }
    return l;
  }

  void merge(int k, int l, std::deque<int>& q) {
    int a = rep(k), b = rep(l);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_count_;
    q.push_back(b);
  }

  void coincidence(int a, int b) {
    std::deque<int> q;
    merge(a, b, q);
    while (!q.empty()) {
      int g = q.front();
      q.pop_front();
      for (int x = 0; x < cols_; ++x) {
        int d = table_[g][x];
        if (d < 0) continue;
        table_[g][x] = -1;
        if (table_[d][x ^ 1] == g) table_[d][x ^ 1] = -1;
        int m = rep(g), n = rep(d);
        if (table_[m][x] >= 0) merge(n, table_[m][x], q);
        else if (table_[n][x ^ 1] >= 0) merge(m, table_[n][x ^ 1], q);
        else {
          table_[m][x] = n;
          table_[n][x ^ 1] = m;
        }
      }
    }
  }

  // Renumbers live cosets in order of first appearance.
  CosetTable standardize() {
    std::vector<int> order{0}, label(table_.size(), -1);
    label[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (int x = 0; x < cols_; ++x) {
        int t = rep(table_[order[k]][x]);
        if (label[t] < 0) {
          label[t] = static_cast<int>(order.size());
          order.push_back(t);
        }
      }
    CosetTable T;
    T.generators = gens_;
    for (int c : order) {
      std::vector<int> row(cols_);
      for (int x = 0; x < cols_; ++x) row[x] = label[rep(table_[c][x])];
      T.rows.push_back(row);
    }
    return T;
  }

  int gens_, cols_;
  std::size_t max_live_, max_alloc_;
  std::size_t live_count_ = 0;
  bool overflow_ = false;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
};

}  // namespace detail

inline EnumResult todd_coxeter(const Presentation& P, const std::vector<Word>& subgroup, std::size_t max_cosets) {
  if (max_cosets == 0) throw std::invalid_argument("coset bound must be positive");
  if (P.generators == 0) {
    EnumResult r{EnumStatus::closed, {}};
    r.table.rows.push_back({});
    return r;
  }
  return detail::Enumerator(P, max_cosets).run(subgroup);
}

enum class Transversal { bfs, dfs };

struct SchreierPresentation {
  Presentation presentation;
  // Schreier generator k+1 is the edge coset --g--> (coset, g).
  std::vector<std::pair<int, int>> edges;
};

inline SchreierPresentation reidemeister_schreier(const Presentation& P, const CosetTable& T,
                                                  Transversal policy = Transversal::bfs) {
  if (!T.closed() || T.index() == 0) throw std::invalid_argument("coset table is not closed");
  if (T.generators != P.generators) throw std::invalid_argument("table does not match presentation");
  const int m = static_cast<int>(T.index()), g = P.generators;
  // tree[c][k] marks the edge c --g_{k+1}--> as part of the spanning tree.
  std::vector<std::vector<bool>> tree(m, std::vector<bool>(g, false));
  std::vector<bool> seen(m, false);
  seen[0] = true;
  auto visit_edge = [&](int c, int col, auto&& push) {
    int d = T.rows[c][col];
    if (seen[d]) return;
    seen[d] = true;
    if (col % 2 == 0) tree[c][col / 2] = true;
    else tree[d][col / 2] = true;
    push(d);
  };
  if (policy == Transversal::bfs) {
    std::deque<int> q{0};
    while (!q.empty()) {
      int c = q.front();
      q.pop_front();
      for (int col = 0; col < 2 * g; ++col) visit_edge(c, col, [&](int d) { q.push_back(d); });
    }
  } else {
    std::function<void(int)> dfs = [&](int c) {
      for (int col = 2 * g - 1; col >= 0; --col) visit_edge(c, col, [&](int d) { dfs(d); });
    };
    dfs(0);
  }
  SchreierPresentation S;
  std::vector<std::vector<int>> id(m, std::vector<int>(g, 0));
  for (int c = 0; c < m; ++c)
    for (int k = 0; k < g; ++k)
      if (!tree[c][k]) {
        S.edges.push_back({c, k + 1});
        id[c][k] = static_cast<int>(S.edges.size());
      }
  S.presentation.generators = static_cast<int>(S.edges.size());
  auto rewrite = [&](int c, const Word& w) {
    Word out;
    for (int x : w) {
      int k = std::abs(x) - 1;
      if (x > 0) {
        if (id[c][k]) out.push_back(id[c][k]);
        c = T.rows[c][2 * k];
      } else {
        int d = T.rows[c][2 * k + 1];
        if (id[d][k]) out.push_back(-id[d][k]);
        c = d;
      }
    }
    return out;
  };
  for (int c = 0; c < m; ++c)
    for (const auto& r : P.relators) S.presentation.add(rewrite(c, r));
  S.presentation.deduplicate();
  return S;
}

// Coset table of Ker(theta) read off the regular action of theta's image.
// Requires every relator of P to map to the identity.
inline CosetTable kernel_table(const Presentation& P, const MonodromyRep& theta, std::size_t max_index) {
  if (static_cast<int>(theta.images.size()) != P.generators)
    throw std::invalid_argument("theta does not match presentation");
  for (const auto& r : P.relators)
    if (!perm_is_identity(theta.of(r))) throw std::invalid_argument("theta does not respect a relator");
  std::map<Perm, int> index;
  std::vector<Perm> elems{perm_identity(theta.degree)};
  index[elems[0]] = 0;
  CosetTable T;
  T.generators = P.generators;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    std::vector<int> row(2 * P.generators);
    for (int gi = 0; gi < P.generators; ++gi)
      for (int s = 0; s < 2; ++s) {
        const Perm& img = theta.images[gi];
        Perm next = perm_then(elems[k], s == 0 ? img : perm_inverse(img));
        auto it = index.find(next);
        if (it == index.end()) {
          if (elems.size() >= max_index) throw std::length_error("image of theta exceeds the oracle bound");
          it = index.emplace(next, static_cast<int>(elems.size())).first;
          elems.push_back(next);
        }
        row[2 * gi + s] = it->second;
      }
    T.rows.push_back(row);
  }
  return T;
}

struct GaloisQuotient {
  std::size_t image_order = 0;        // |theta(G)| = index of Ker theta
  Presentation kernel;                // Ker theta / <g_i^2, g_1...g_d>
  InvariantFactors abelian;
  std::optional<std::size_t> order;   // when the enumeration closes
};

// Ker theta in P + {g_i^2} + {g_1...g_d}: the Galois-cover group of the
// branched cover determined by theta.
inline GaloisQuotient galois_quotient(const Presentation& P, const MonodromyRep& theta, std::size_t max_cosets) {
  Presentation Q = P;
  for (int i = 1; i <= P.generators; ++i) Q.add({i, i});
  Q.add(generator_product(P.generators));
  CosetTable T = kernel_table(Q, theta, max_cosets);
  GaloisQuotient G;
  G.image_order = T.index();
  G.kernel = reidemeister_schreier(Q, T).presentation;
  G.abelian = abelianization(G.kernel);
  EnumResult e = todd_coxeter(G.kernel, {}, max_cosets);
  if (e.status == EnumStatus::closed) G.order = e.table.index();
  return G;
}

}  // namespace stab

// Exact integer linear algebra: Smith and Hermite normal forms, abelian
// group invariants of finitely generated quotients of Z^m.
#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace stab {

using Int = boost::multiprecision::cpp_int;
using IntVec = std::vector<Int>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// Floor division; b != 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

inline long long to_ll(const Int& a) {
  if (a > Int(std::numeric_limits<long long>::max()) ||
      a < Int(std::numeric_limits<long long>::min()))
    throw std::overflow_error("integer does not fit in 64 bits: " + a.str());
  return static_cast<long long>(a);
}

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVec row(std::size_t r) const {
    return IntVec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row dst += k * row src
  void add_row(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(src, j) != 0) (*this)(dst, j) += k * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, src) != 0) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

inline IntVec operator*(const IntMatrix& a, const IntVec& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix/vector dimension mismatch");
  IntVec r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

// U * M * V == D, U and V unimodular, D diagonal with d_0 | d_1 | ... and
// d_k > 0 for k < rank.
struct SmithForm {
  IntMatrix u, d, v;
  std::size_t rank = 0;
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  SmithForm s{IntMatrix::identity(R), m, IntMatrix::identity(C), 0};
  IntMatrix& a = s.d;

  auto move_min_to = [&](std::size_t t, bool whole) {
    // whole: search the full lower-right block; otherwise only row t / col t
    std::size_t bi = R, bj = C;
    Int best;
    auto consider = [&](std::size_t i, std::size_t j) {
      if (a(i, j) == 0) return;
      Int v = abs_int(a(i, j));
      if (bi == R || v < best) { best = v; bi = i; bj = j; }
    };
    if (whole) {
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j) consider(i, j);
    } else {
      for (std::size_t i = t; i < R; ++i) consider(i, t);
      for (std::size_t j = t; j < C; ++j) consider(t, j);
    }
    if (bi == R) return false;
    a.swap_rows(t, bi); s.u.swap_rows(t, bi);
    a.swap_cols(t, bj); s.v.swap_cols(t, bj);
    return true;
  };

  std::size_t t = 0;
  while (t < R && t < C) {
    if (!move_min_to(t, true)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a(i, t) == 0) continue;
        Int q = a(i, t) / a(t, t);
        a.add_row(i, t, -q); s.u.add_row(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a(t, j) == 0) continue;
        Int q = a(t, j) / a(t, t);
        a.add_col(j, t, -q); s.v.add_col(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) { move_min_to(t, false); continue; }
      bool fixed = false;
      for (std::size_t i = t + 1; i < R && !fixed; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row(t, i, 1); s.u.add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (a(t, t) < 0) { a.negate_row(t); s.u.negate_row(t); }
    ++t;
  }
  s.rank = t;
  return s;
}

// Cyclic decomposition of a finitely generated abelian group. Trivial
// factors are dropped; 0 encodes a free cyclic factor Z. Sorted so that
// each factor divides the next, free factors last.
struct InvariantFactors {
  std::vector<Int> factors;

  bool trivial() const { return factors.empty(); }
  std::size_t free_rank() const {
    return static_cast<std::size_t>(std::count(factors.begin(), factors.end(), Int(0)));
  }
  std::vector<Int> torsion() const {
    std::vector<Int> t;
    for (const auto& f : factors)
      if (f != 0) t.push_back(f);
    return t;
  }
  bool operator==(const InvariantFactors& o) const { return factors == o.factors; }
  bool operator!=(const InvariantFactors& o) const { return !(*this == o); }

  std::string to_string() const {
    if (factors.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) os << " x ";
      if (factors[i] == 0) os << "Z";
      else os << "Z_" << factors[i];
    }
    return os.str();
  }
};

inline InvariantFactors invariants_from_diagonal(std::vector<Int> diag, std::size_t ambient) {
  InvariantFactors inv;
  std::vector<Int> tors;
  for (auto& d : diag) {
    d = abs_int(d);
    if (d != 1 && d != 0) tors.push_back(d);
  }
  std::sort(tors.begin(), tors.end());
  std::size_t nonzero = 0;
  for (const auto& d : diag) nonzero += (d != 0);
  inv.factors = tors;
  for (std::size_t k = nonzero; k < ambient; ++k) inv.factors.push_back(0);
  return inv;
}

// Invariants of Z^rank / <generators>.
inline InvariantFactors quotient_invariants(std::size_t rank, const std::vector<IntVec>& generators) {
  if (generators.empty()) return invariants_from_diagonal({}, rank);
  SmithForm s = smith_normal_form(IntMatrix::from_rows(generators, rank));
  std::vector<Int> diag;
  for (std::size_t k = 0; k < s.rank; ++k) diag.push_back(s.d(k, k));
  return invariants_from_diagonal(diag, rank);
}

// gcd of the entries; 0 for the zero vector.
inline Int divisibility(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, abs_int(x));
  return g;
}

// Row-style Hermite normal form of the lattice spanned by the rows of
// `gens`: zero rows removed, pivots positive, entries above each pivot
// reduced into [0, pivot).
inline IntMatrix hermite_normal_form(const IntMatrix& gens) {
  IntMatrix a = gens;
  const std::size_t R = a.rows(), C = a.cols();
  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < C && row < R; ++col) {
    for (;;) {
      std::size_t best = R;
      for (std::size_t i = row; i < R; ++i)
        if (a(i, col) != 0 && (best == R || abs_int(a(i, col)) < abs_int(a(best, col)))) best = i;
      if (best == R) break;
      a.swap_rows(row, best);
      bool clean = true;
      for (std::size_t i = row + 1; i < R; ++i) {
        if (a(i, col) == 0) continue;
        a.add_row(i, row, -(a(i, col) / a(row, col)));
        if (a(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(row, col) == 0) continue;
    if (a(row, col) < 0) a.negate_row(row);
    for (std::size_t i = 0; i < row; ++i) a.add_row(i, row, -floor_div(a(i, col), a(row, col)));
    pivots.push_back(col);
    ++row;
  }
  IntMatrix h(row, C);
  for (std::size_t i = 0; i < row; ++i)
    for (std::size_t j = 0; j < C; ++j) h(i, j) = a(i, j);
  return h;
}

inline IntMatrix lattice_hnf(const std::vector<IntVec>& gens, std::size_t dim) {
  if (gens.empty()) return IntMatrix(0, dim);
  return hermite_normal_form(IntMatrix::from_rows(gens, dim));
}

inline bool lattice_equal(const std::vector<IntVec>& a, const std::vector<IntVec>& b, std::size_t dim) {
  return lattice_hnf(a, dim) == lattice_hnf(b, dim);
}

// Canonical representative of v modulo the lattice with HNF basis h.
inline IntVec reduce_mod_lattice(IntVec v, const IntMatrix& h) {
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    Int q = floor_div(v[p], h(i, p));
    for (std::size_t j = 0; j < h.cols(); ++j) v[j] -= q * h(i, j);
  }
  return v;
}

inline bool lattice_contains(const IntMatrix& hnf, const IntVec& v) {
  IntVec r = reduce_mod_lattice(v, hnf);
  return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
}

// Integer solution of A x = b, if one exists.
inline std::optional<IntVec> solve_integer_system(const IntMatrix& a, const IntVec& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side size mismatch");
  SmithForm s = smith_normal_form(a);
  IntVec c = s.u * b;
  IntVec y(a.cols());
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k < s.rank) {
      if (c[k] % s.d(k, k) != 0) return std::nullopt;
      y[k] = c[k] / s.d(k, k);
    } else if (c[k] != 0) {
      return std::nullopt;
    }
  }
  return s.v * y;
}

inline std::string vec_to_string(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace stab

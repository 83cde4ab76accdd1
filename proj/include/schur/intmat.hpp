#pragma once

// Exact integer matrix algebra: Smith normal form and abelian-group
// invariants of quotients Z^n / rowspace.  Everything here runs on
// arbitrary-precision integers; intermediate entries of an elimination can
// exceed any fixed width even for small inputs.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace schur {

using Int = mpz_class;

/// Dense row-major matrix over Z.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> entries;  // rows * cols

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

  Int& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

  void append_row(const std::vector<Int>& row) {
    if (rows == 0 && cols == 0 && entries.empty()) cols = row.size();
    if (row.size() != cols) throw std::invalid_argument("append_row: width mismatch");
    entries.insert(entries.end(), row.begin(), row.end());
    ++rows;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
};

struct SmithResult {
  std::vector<Int> diag;  // nonzero invariant factors d1 | d2 | ... (ones kept)
  std::size_t rank = 0;   // == diag.size()
};

namespace detail {

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
}

inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}

// smallest |entry| != 0 in the trailing submatrix m[t.., t..]
inline bool find_pivot(const IntMatrix& m, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < m.rows; ++i) {
    for (std::size_t j = t; j < m.cols; ++j) {
      const Int& e = m.at(i, j);
      if (sgn(e) == 0) continue;
      Int a = abs(e);
      if (!found || a < best) {
        found = true;
        best = a;
        pi = i;
        pj = j;
      }
    }
  }
  return found;
}

}  // namespace detail

/// Invariant factors of an integer matrix.  The diagonal returned contains
/// the nonzero factors only (trailing zeros are dropped); ones are kept so
/// that identity(n) reports diag [1,...,1].  The result depends only on the
/// row lattice and column space, so any row/column permutation of the input
/// produces the same diagonal.
inline SmithResult smith_normal_form(IntMatrix m) {
  const std::size_t R = m.rows, C = m.cols;
  std::size_t t = 0;
  while (t < R && t < C) {
    std::size_t pi = t, pj = t;
    if (!detail::find_pivot(m, t, pi, pj)) break;
    detail::swap_rows(m, t, pi);
    detail::swap_cols(m, t, pj);

    for (;;) {
      // clear column t below the pivot, then row t right of it; column
      // operations can reintroduce column entries, so loop until both stay
      // clean
      bool touched = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        while (sgn(m.at(i, t)) != 0) {
          Int q = m.at(i, t) / m.at(t, t);
          if (sgn(q) != 0)
            for (std::size_t j = t; j < C; ++j) m.at(i, j) -= q * m.at(t, j);
          if (sgn(m.at(i, t)) != 0) {
            detail::swap_rows(m, t, i);  // remainder is a smaller pivot
            touched = true;
          }
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        while (sgn(m.at(t, j)) != 0) {
          Int q = m.at(t, j) / m.at(t, t);
          if (sgn(q) != 0)
            for (std::size_t i = t; i < R; ++i) m.at(i, j) -= q * m.at(i, t);
          if (sgn(m.at(t, j)) != 0) {
            detail::swap_cols(m, t, j);
            touched = true;
          }
        }
      }
      if (touched) continue;

      if (sgn(m.at(t, t)) < 0) m.at(t, t) = -m.at(t, t);

      // enforce d_t | every remaining entry; folding an offending row into
      // row t shrinks the pivot to a gcd on the next pass
      bool fixed = true;
      for (std::size_t i = t + 1; i < R && fixed; ++i)
        for (std::size_t j = t + 1; j < C && fixed; ++j)
          if (!mpz_divisible_p(m.at(i, j).get_mpz_t(), m.at(t, t).get_mpz_t())) {
            for (std::size_t jj = t; jj < C; ++jj) m.at(t, jj) += m.at(i, jj);
            fixed = false;
          }
      if (fixed) break;
    }
    ++t;
  }

  SmithResult res;
  res.rank = t;
  res.diag.reserve(t);
  for (std::size_t s = 0; s < t; ++s) res.diag.push_back(m.at(s, s));
  return res;
}

struct SmithLeftResult {
  std::vector<Int> diag;  // nonzero invariant factors
  std::size_t rank = 0;
  IntMatrix left;  // unimodular U with U*m column-equivalent to diag(d)
};

/// Smith normal form tracking the left (row-operation) transform: row i of
/// U*m equals d_i times a primitive vector, so rows of U with d_i = 1 name
/// integer row combinations whose span is a direct summand of the row
/// lattice.
inline SmithLeftResult smith_with_left_transform(IntMatrix m) {
  const std::size_t R = m.rows, C = m.cols;
  IntMatrix u = IntMatrix::identity(R);
  auto row_sub = [&](std::size_t i, std::size_t t, const Int& q) {
    for (std::size_t j = 0; j < C; ++j) m.at(i, j) -= q * m.at(t, j);
    for (std::size_t j = 0; j < R; ++j) u.at(i, j) -= q * u.at(t, j);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    detail::swap_rows(m, a, b);
    detail::swap_rows(u, a, b);
  };
  auto row_neg = [&](std::size_t i) {
    for (std::size_t j = 0; j < C; ++j) m.at(i, j) = -m.at(i, j);
    for (std::size_t j = 0; j < R; ++j) u.at(i, j) = -u.at(i, j);
  };

  std::size_t t = 0;
  while (t < R && t < C) {
    std::size_t pi = t, pj = t;
    if (!detail::find_pivot(m, t, pi, pj)) break;
    row_swap(t, pi);
    detail::swap_cols(m, t, pj);
    for (;;) {
      bool touched = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        while (sgn(m.at(i, t)) != 0) {
          Int q = m.at(i, t) / m.at(t, t);
          if (sgn(q) != 0) row_sub(i, t, q);
          if (sgn(m.at(i, t)) != 0) {
            row_swap(t, i);
            touched = true;
          }
        }
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        while (sgn(m.at(t, j)) != 0) {
          Int q = m.at(t, j) / m.at(t, t);
          if (sgn(q) != 0)
            for (std::size_t i = t; i < R; ++i) m.at(i, j) -= q * m.at(i, t);
          if (sgn(m.at(t, j)) != 0) {
            detail::swap_cols(m, t, j);
            touched = true;
          }
        }
      }
      if (touched) continue;
      if (sgn(m.at(t, t)) < 0) row_neg(t);
      bool fixed = true;
      for (std::size_t i = t + 1; i < R && fixed; ++i)
        for (std::size_t j = t + 1; j < C && fixed; ++j)
          if (!mpz_divisible_p(m.at(i, j).get_mpz_t(), m.at(t, t).get_mpz_t())) {
            for (std::size_t jj = 0; jj < C; ++jj) m.at(t, jj) += m.at(i, jj);
            for (std::size_t jj = 0; jj < R; ++jj) u.at(t, jj) += u.at(i, jj);
            fixed = false;
          }
      if (fixed) break;
    }
    ++t;
  }

  SmithLeftResult res;
  res.rank = t;
  for (std::size_t s = 0; s < t; ++s) res.diag.push_back(m.at(s, s));
  res.left = std::move(u);
  return res;
}

/// Invariant-factor decomposition of a finitely generated abelian group:
/// torsion chain d1 | d2 | ... (each >= 2) plus free rank.
struct AbelianInvariants {
  std::vector<Int> torsion;
  std::size_t free_rank = 0;

  bool operator==(const AbelianInvariants&) const = default;

  bool is_trivial() const { return torsion.empty() && free_rank == 0; }
  bool is_finite() const { return free_rank == 0; }

  Int order() const {
    if (!is_finite()) throw std::domain_error("order(): infinite group");
    Int o = 1;
    for (const Int& d : torsion) o *= d;
    return o;
  }

  bool is_p_group(unsigned long p) const {
    if (!is_finite()) return false;
    for (Int d : torsion) {
      while (mpz_divisible_ui_p(d.get_mpz_t(), p)) d /= (long)p;
      if (d != 1) return false;
    }
    return true;
  }

  /// log_p of the group order; throws unless the group is a finite p-group.
  std::size_t log_order(unsigned long p) const {
    if (!is_finite()) throw std::domain_error("log_order(): infinite group");
    std::size_t e = 0;
    for (Int d : torsion) {
      while (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
        d /= (long)p;
        ++e;
      }
      if (d != 1) throw std::domain_error("log_order(): order is not a power of p");
    }
    return e;
  }

  bool is_elementary(unsigned long p) const {
    if (!is_finite()) return false;
    for (const Int& d : torsion)
      if (d != (long)p) return false;
    return true;
  }

  std::string str() const {
    if (is_trivial()) return "1";
    std::string s;
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      if (i) s += " x ";
      s += "Z" + torsion[i].get_str();
    }
    if (free_rank) {
      if (!s.empty()) s += " x ";
      s += "Z^" + std::to_string(free_rank);
    }
    return s;
  }
};

/// Builds canonical invariants from an arbitrary list of cyclic orders
/// (order-0 entries count as free factors).
inline AbelianInvariants invariants_from_cyclic_orders(const std::vector<Int>& orders) {
  std::size_t free = 0;
  IntMatrix diag;
  std::vector<Int> finite;
  for (const Int& d : orders) {
    if (sgn(d) == 0)
      ++free;
    else
      finite.push_back(abs(d));
  }
  IntMatrix m(finite.size(), finite.size());
  for (std::size_t i = 0; i < finite.size(); ++i) m.at(i, i) = finite[i];
  auto snf = smith_normal_form(m);
  AbelianInvariants inv;
  inv.free_rank = free + (finite.size() - snf.rank);
  for (const Int& d : snf.diag)
    if (d > 1) inv.torsion.push_back(d);
  return inv;
}

/// Invariants of Z^ngens / rowspace(relations).  Factors equal to 1 are
/// dropped; free_rank = ngens - rank(relations).
inline AbelianInvariants abelian_invariants(const IntMatrix& relations, std::size_t ngens) {
  if (relations.rows != 0 && relations.cols != ngens)
    throw std::invalid_argument("abelian_invariants: relation matrix has " +
                                std::to_string(relations.cols) + " columns, expected " +
                                std::to_string(ngens));
  auto snf = smith_normal_form(relations);
  AbelianInvariants inv;
  inv.free_rank = ngens - snf.rank;
  for (const Int& d : snf.diag)
    if (d > 1) inv.torsion.push_back(d);
  return inv;
}

/// Incremental row-space accumulator over Z.  Rows are inserted one at a
/// time and reduced against an echelon basis of the lattice generated so
/// far; pivot rows are stored sparsely.  Intended for very tall sparse
/// matrices (the bar-resolution boundary d3) whose rows would never fit in
/// memory at once.
class RowLattice {
 public:
  explicit RowLattice(std::size_t cols) : cols_(cols), scratch_(cols), scratch2_(cols) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  void add_sparse_row(const std::vector<std::pair<std::size_t, Int>>& row) {
    zero_scratch();
    for (const auto& [c, v] : row) {
      if (c >= cols_) throw std::invalid_argument("RowLattice: column out of range");
      scratch_[c] += v;
    }
    reduce_scratch();
  }

  void add_row(const std::vector<Int>& dense) {
    if (dense.size() != cols_) throw std::invalid_argument("RowLattice: width mismatch");
    zero_scratch();
    for (std::size_t c = 0; c < cols_; ++c) scratch_[c] = dense[c];
    reduce_scratch();
  }

  /// Echelon basis of the accumulated lattice, one row per pivot column.
  IntMatrix basis() const {
    IntMatrix m(rows_.size(), cols_);
    std::size_t r = 0;
    for (const auto& [piv, nz] : rows_) {
      for (const auto& [c, v] : nz) m.at(r, c) = v;
      ++r;
    }
    return m;
  }

 private:
  using SparseRow = std::vector<std::pair<std::uint32_t, Int>>;

  void zero_scratch() {
    for (Int& v : scratch_)
      if (sgn(v) != 0) v = 0;
  }

  void reduce_scratch() {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (sgn(scratch_[c]) == 0) continue;
      auto it = rows_.find(c);
      if (it == rows_.end()) {
        // new pivot; normalize sign
        SparseRow nz;
        bool neg = sgn(scratch_[c]) < 0;
        for (std::size_t j = c; j < cols_; ++j) {
          if (sgn(scratch_[j]) == 0) continue;
          nz.emplace_back((std::uint32_t)j, neg ? Int(-scratch_[j]) : scratch_[j]);
        }
        rows_.emplace(c, std::move(nz));
        return;
      }
      const SparseRow& P = it->second;
      const Int& a = P.front().second;  // pivot value at column c
      Int& b = scratch_[c];
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        Int q = b / a;
        for (const auto& [j, v] : P) scratch_[j] -= q * v;
      } else {
        // gcd combine: replace the pivot row with x*P + y*r and continue
        // with (a/g)*r - (b/g)*P, which vanishes at column c
        Int g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        Int ag = a / g, bg = b / g;
        for (std::size_t j = c; j < cols_; ++j) scratch2_[j] = 0;
        for (const auto& [j, v] : P) scratch2_[j] = x * v;
        for (std::size_t j = c; j < cols_; ++j) scratch2_[j] += y * scratch_[j];
        // rebuild scratch = ag*scratch - bg*P
        for (std::size_t j = c; j < cols_; ++j) scratch_[j] *= ag;
        for (const auto& [j, v] : P) scratch_[j] -= bg * v;
        SparseRow nz;
        for (std::size_t j = c; j < cols_; ++j)
          if (sgn(scratch2_[j]) != 0) nz.emplace_back((std::uint32_t)j, scratch2_[j]);
        it->second = std::move(nz);
      }
    }
  }

  std::size_t cols_;
  std::map<std::size_t, SparseRow> rows_;  // pivot column -> row
  std::vector<Int> scratch_, scratch2_;
};

}  // namespace schur

#pragma once

// Schur multiplier via central tails.
//
// Attach one new central generator (a "tail") to every relation of a
// consistent presentation:
//
//     g_i^p      = w_i      t_i
//     [g_j, g_i] = c_{ji}   t_{ji}
//
// Tails carry unbounded integer exponents and commute with everything, so
// collecting a word in the tailed presentation yields (normal form, tail
// vector).  Collecting both sides of every consistency overlap gives pairs
// of words that are equal in the covering object F/[F,R]; the differences of
// their tail vectors present R/[F,R] = M(G) + Z^n.  Eliminating one tail per
// non-minimal generator (each generator in the Frattini subgroup is defined
// by a relation) cuts the free part down to Z^{d(G)} without touching the
// torsion, which is M(G).  Both rank identities are enforced as hard
// postconditions, and an independent bar-resolution homology oracle
// cross-checks small groups.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schur/intmat.hpp"
#include "schur/pcgroup.hpp"

namespace schur {

struct TailedPresentation {
  PcPresentation base;
  std::size_t tail_count;

  explicit TailedPresentation(PcPresentation b)
      : base(std::move(b)), tail_count(base.n() + base.n() * (base.n() - 1) / 2) {}

  std::size_t power_tail(std::size_t i) const { return i; }
  std::size_t comm_tail(std::size_t j, std::size_t i) const {
    return base.n() + j * (j - 1) / 2 + i;
  }
};

struct TailedElement {
  PcElement main;
  std::vector<long long> tails;
};

namespace detail {

struct TailHooks {
  const TailedPresentation* tp;
  std::vector<long long>* tails;
  void power(std::size_t i) { (*tails)[tp->power_tail(i)] += 1; }
  void comm(std::size_t j, std::size_t i) { (*tails)[tp->comm_tail(j, i)] += 1; }
};

}  // namespace detail

/// Collection in the tailed presentation; the main part always equals plain
/// collection of the same word.  Only nonnegative exponents occur in overlap
/// words, so inverses are not supported here.
inline TailedElement tailed_collect(const TailedPresentation& tp,
                                    const std::vector<std::pair<int, long long>>& word) {
  TailedElement out;
  out.tails.assign(tp.tail_count, 0);
  std::vector<int> w;
  for (const auto& [gen, e] : word) {
    if (e < 0) throw std::invalid_argument("tailed_collect: negative exponent");
    for (long long c = 0; c < e; ++c) w.push_back(gen);
  }
  detail::TailHooks hooks{&tp, &out.tails};
  out.main = collect_letters(tp.base, w, hooks);
  return out;
}

/// Thrown when the two sides of an overlap disagree in their main parts,
/// i.e. the base presentation was not consistent.
struct InconsistentBase : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One row per consistency overlap: the difference of the tail vectors
/// collected on the two sides.  Z^tails / rowspace is M(G) + Z^{d(G)}.
inline IntMatrix consistency_relation_matrix(const TailedPresentation& tp) {
  const std::size_t r = tp.tail_count;
  IntMatrix m(0, r);
  for_each_overlap(tp.base, [&](const Overlap& o) {
    std::vector<long long> lt(r, 0), rt(r, 0);
    detail::TailHooks lh{&tp, &lt}, rh{&tp, &rt};
    PcElement lm = collect_side(tp.base, o.lhs, lh);
    PcElement rm = collect_side(tp.base, o.rhs, rh);
    if (!(lm == rm))
      throw InconsistentBase("consistency_relation_matrix: overlap " + o.family +
                             " disagrees in the base group");
    std::vector<Int> row(r);
    for (std::size_t c = 0; c < r; ++c) row[c] = (long)(lt[c] - rt[c]);
    m.append_row(row);
  });
  return m;
}

struct FreeRankMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

struct MultiplierResult {
  AbelianInvariants multiplier;   // torsion part only
  std::size_t free_rank_check;    // must equal d(G)
  std::size_t consistency_rows;   // overlap rows harvested
};

namespace detail {

// Image of each relator in F^ab = Z^n: the power relator g_i^p w_i^-1 maps
// to p*e_i - w_i and the commutator relator [g_j,g_i] c^-1 maps to -c.
inline IntMatrix tail_abelianized_images(const TailedPresentation& tp) {
  const std::size_t n = tp.base.n();
  IntMatrix a(tp.tail_count, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = tp.power_tail(i);
    for (std::size_t t = 0; t < n; ++t) a.at(r, t) = -Int((long)tp.base.power_rhs(i)[t]);
    a.at(r, i) += (long)tp.base.p();
  }
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      std::size_t r = tp.comm_tail(j, i);
      for (std::size_t t = 0; t < n; ++t) a.at(r, t) = -Int((long)tp.base.comm_rhs(j, i)[t]);
    }
  return a;
}

}  // namespace detail

/// Multiplier of the presented group.
///
/// The raw tail quotient Z^r / rowspace(consistency matrix) is M(G) + Z^n,
/// one free factor per pc generator.  As in the standard tails step, one
/// tail per non-minimal generator is then eliminated (a "definition"): the
/// left Smith transform of the relator images in F^ab supplies n - d(G)
/// integer tail combinations that are primitive modulo the relation lattice,
/// and quotienting by them removes exactly that many free factors while
/// leaving the torsion part untouched.  Both facts are re-checked on every
/// run: the raw free rank must be n, the reduced free rank must be d(G), and
/// the two torsion parts must agree.
inline MultiplierResult schur_multiplier(const PcPresentation& g) {
  TailedPresentation tp(g);
  const std::size_t r = tp.tail_count;
  const std::size_t n = g.n();

  IntMatrix m = consistency_relation_matrix(tp);
  AbelianInvariants raw = abelian_invariants(m, r);
  if (raw.free_rank != n)
    throw std::logic_error("schur_multiplier: raw tail quotient has free rank " +
                           std::to_string(raw.free_rank) + ", expected n = " + std::to_string(n));

  const std::size_t d = abelianization(g).second;
  auto sl = smith_with_left_transform(detail::tail_abelianized_images(tp));
  std::size_t ones = 0;
  for (const Int& v : sl.diag)
    if (v == 1) ++ones;
  if (sl.rank != n || ones != n - d)
    throw std::logic_error("schur_multiplier: definition count mismatch");

  IntMatrix reduced = m;
  for (std::size_t i = 0; i < r; ++i) {
    if (i < sl.diag.size() && sl.diag[i] == 1) {
      std::vector<Int> row(r);
      for (std::size_t c = 0; c < r; ++c) row[c] = sl.left.at(i, c);
      reduced.append_row(row);
    }
  }
  AbelianInvariants inv = abelian_invariants(reduced, r);

  MultiplierResult res;
  res.consistency_rows = m.rows;
  res.free_rank_check = inv.free_rank;
  res.multiplier.torsion = inv.torsion;
  res.multiplier.free_rank = 0;

  if (res.free_rank_check != d)
    throw FreeRankMismatch("schur_multiplier: free rank " + std::to_string(res.free_rank_check) +
                           " != d(G) = " + std::to_string(d));
  if (res.multiplier.torsion != raw.torsion)
    throw std::logic_error("schur_multiplier: definition elimination altered the torsion part");
  if (!res.multiplier.is_p_group(g.p()))
    throw std::logic_error("schur_multiplier: multiplier of a p-group must be a p-group");
  return res;
}

// ---------------------------------------------------------------------------
// bar-resolution homology oracle
//
// H_2(G; Z) from the boundary matrices of the (inhomogeneous) bar complex
// with trivial coefficients,
//     d2[g|h]   = [h] - [gh] + [g]
//     d3[g|h|k] = [h|k] - [gh|k] + [g|hk] - [g|h],
// so d2 is |G|^2 x |G| and d3 is |G|^3 x |G|^2.  Since ker d2 is a pure
// sublattice of C_2, the torsion of H_2 equals the invariant factors > 1 of
// d3; d3 rows are generated on the fly and folded into an incremental row
// lattice, which is what keeps the |G|^3 row count manageable.

inline AbelianInvariants h2_bar_oracle(const MultTable& tb, std::uint64_t cap = 32) {
  if (tb.size > cap) throw CapExceeded("h2_bar_oracle: group order exceeds oracle cap");
  detail::validate_table(tb);
  const std::size_t m = tb.size;

  RowLattice d2(m);
  {
    std::vector<std::pair<std::size_t, Int>> row;
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t h = 0; h < m; ++h) {
        row.clear();
        row.emplace_back(h, 1);
        row.emplace_back(tb.at(g, h), -1);
        row.emplace_back(g, 1);
        d2.add_sparse_row(row);
      }
  }

  RowLattice d3(m * m);
  {
    std::vector<std::pair<std::size_t, Int>> row;
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t h = 0; h < m; ++h)
        for (std::size_t k = 0; k < m; ++k) {
          row.clear();
          row.emplace_back(h * m + k, 1);
          row.emplace_back((std::size_t)tb.at(g, h) * m + k, -1);
          row.emplace_back(g * m + (std::size_t)tb.at(h, k), 1);
          row.emplace_back(g * m + h, -1);
          d3.add_sparse_row(row);
        }
  }

  // free rank of H_2 must vanish for a finite group
  if (m * m != d2.rank() + d3.rank())
    throw std::logic_error("h2_bar_oracle: nonzero free rank in H_2");

  auto snf = smith_normal_form(d3.basis());
  AbelianInvariants inv;
  for (const Int& d : snf.diag)
    if (d > 1) inv.torsion.push_back(d);
  return inv;
}

}  // namespace schur

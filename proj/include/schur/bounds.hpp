#pragma once

// Bound formulas and structural predicates for multipliers of p-groups:
// the Green and Niroomand exponents, bound-attainment, tensor products of
// abelian groups, the Jones divisibility relation for central quotients, the
// psi_2 / psi_3 images and the Ellis inequality for class-3 groups, the
// three necessary conditions for bound attainment, and the central
// order-p quotient scan.  All comparisons happen on p-adic exponents.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schur/intmat.hpp"
#include "schur/multiplier.hpp"
#include "schur/pcgroup.hpp"

namespace schur {

/// Green: |M(G)| <= p^{n(n-1)/2} for |G| = p^n.
inline long long green_exponent(long long n) {
  if (n < 0) throw std::invalid_argument("green_exponent: n must be >= 0");
  return n * (n - 1) / 2;
}

/// Niroomand: |M(G)| <= p^{(n+k-2)(n-k-1)/2 + 1} for non-abelian G with
/// |G'| = p^k.  Computed exactly; a non-integer outcome is rejected rather
/// than rounded (it cannot occur for integer n, k since n+k and n-k share
/// parity, but silently truncating a misuse would be worse than refusing).
inline long long niroomand_exponent(long long n, long long k) {
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("niroomand_exponent: need 1 <= k <= n-1");
  long long prod = (n + k - 2) * (n - k - 1);
  if (prod % 2 != 0) throw std::domain_error("niroomand_exponent: non-integer result");
  return prod / 2 + 1;
}

/// Tensor product of finite abelian groups via pairwise gcds of the cyclic
/// factors.
inline AbelianInvariants abelian_tensor(const AbelianInvariants& a, const AbelianInvariants& b) {
  if (!a.is_finite() || !b.is_finite())
    throw std::domain_error("abelian_tensor: both factors must be finite");
  std::vector<Int> cyc;
  for (const Int& x : a.torsion)
    for (const Int& y : b.torsion) {
      Int g;
      mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      cyc.push_back(g);
    }
  return invariants_from_cyclic_orders(cyc);
}

/// Multiplier of a finite abelian group: the exterior square
/// M(Z_{d1} x ... x Z_{dt}) = sum_{i<j} Z_{gcd(di,dj)}.
inline AbelianInvariants multiplier_of_abelian(const AbelianInvariants& a) {
  if (!a.is_finite()) throw std::domain_error("multiplier_of_abelian: infinite group");
  std::vector<Int> cyc;
  for (std::size_t i = 0; i < a.torsion.size(); ++i)
    for (std::size_t j = i + 1; j < a.torsion.size(); ++j) {
      Int g;
      mpz_gcd(g.get_mpz_t(), a.torsion[i].get_mpz_t(), a.torsion[j].get_mpz_t());
      cyc.push_back(g);
    }
  return invariants_from_cyclic_orders(cyc);
}

struct Lemma31Flags {
  bool gab_elementary = false;
  bool center_elementary = false;
  bool center_in_derived = false;
  // the one family excused from (iii): the extraspecial-times-elementary
  // profile, recognized by invariants (class 2, k = 1, d = n-1, elementary
  // center of order p^{n-2})
  bool exempt_es_product = false;
};

struct GroupReport {
  unsigned long p = 2;
  std::size_t n = 0;  // |G| = p^n
  std::size_t k = 0;  // |G'| = p^k
  std::size_t c = 0;  // nilpotency class
  std::size_t d = 0;  // minimal generator count
  bool abelian = true;
  AbelianInvariants gab;
  AbelianInvariants center;
  AbelianInvariants multiplier;
  std::size_t mult_exp = 0;  // log_p |M(G)|
  long long t = 0;           // n(n-1)/2 - log_p |M(G)|
  bool attains_niroomand = false;
  Lemma31Flags lemma31;
  // set when class >= 3 and p != 3 yet log_p|M| exceeds the improved bound
  // (n+k-2)(n-k-1)/2 -- that would be a counterexample and wants eyes on it
  bool improved_bound_alarm = false;
};

inline bool attains_bound(const GroupReport& r) {
  if (r.abelian || r.k == 0) return false;
  return (long long)r.mult_exp == niroomand_exponent((long long)r.n, (long long)r.k);
}

namespace detail {

inline bool subgroup_contained(const PcPresentation& g, const SubgroupBasis& inner,
                               const SubgroupBasis& outer) {
  for (const PcElement& m : inner.members)
    if (!contains(g, outer, m)) return false;
  return true;
}

inline Lemma31Flags lemma31_flags(const PcPresentation& g, const SubgroupBasis& derived,
                                  const SubgroupBasis& z, const AbelianInvariants& gab,
                                  std::size_t n, std::size_t k, std::size_t c, std::size_t d) {
  Lemma31Flags f;
  f.gab_elementary = gab.is_elementary(g.p());
  f.center_elementary = is_elementary_abelian(g, z);
  f.center_in_derived = subgroup_contained(g, z, derived);
  f.exempt_es_product = c == 2 && k == 1 && d + 1 == n && f.gab_elementary &&
                        f.center_elementary && z.log_order() + 2 == n;
  return f;
}

}  // namespace detail

/// Full invariant bundle for one group.  Green's bound and the Niroomand
/// bound are theorems, so violating either is treated as an internal error;
/// the improved class>=3 bound is surfaced as an alarm flag instead.
inline GroupReport analyze(const PcPresentation& g, const CenterOptions& opt = {}) {
  GroupReport r;
  r.p = g.p();
  r.n = g.n();
  auto series = lower_central_series(g);
  r.c = series.size() - 1;
  const SubgroupBasis& derived = series.size() > 1 ? series[1] : SubgroupBasis{};
  r.k = derived.log_order();
  r.abelian = r.k == 0;
  auto ab = abelianization(g);
  r.gab = ab.first;
  r.d = ab.second;
  SubgroupBasis z = center(g, opt);
  r.center = abelian_subgroup_invariants(g, z);
  r.multiplier = schur_multiplier(g).multiplier;
  r.mult_exp = r.multiplier.log_order(r.p);
  r.t = green_exponent((long long)r.n) - (long long)r.mult_exp;
  if (r.t < 0) throw std::logic_error("analyze: Green bound violated (bug)");
  if (!r.abelian) {
    long long bound = niroomand_exponent((long long)r.n, (long long)r.k);
    if ((long long)r.mult_exp > bound)
      throw std::logic_error("analyze: Niroomand bound violated (bug)");
    r.lemma31 = detail::lemma31_flags(g, derived, z, r.gab, r.n, r.k, r.c, r.d);
    r.attains_niroomand = (long long)r.mult_exp == bound;
    if (r.c >= 3 && r.p != 3 && (long long)r.mult_exp > bound - 1) r.improved_bound_alarm = true;
  }
  return r;
}

/// Lemma-style necessary conditions for bound attainment: G^ab elementary,
/// Z(G) elementary, Z(G) inside G' (with the extraspecial-product exemption
/// reported alongside).
inline Lemma31Flags necessary_conditions(const PcPresentation& g, const CenterOptions& opt = {}) {
  if (g.is_abelian()) throw std::invalid_argument("necessary_conditions: group must be non-abelian");
  auto series = lower_central_series(g);
  const SubgroupBasis& derived = series[1];
  SubgroupBasis z = center(g, opt);
  auto ab = abelianization(g);
  return detail::lemma31_flags(g, derived, z, ab.first, g.n(), derived.log_order(),
                               series.size() - 1, ab.second);
}

// ---------------------------------------------------------------------------
// Jones divisibility: |M(G)| |G' ^ K| divides |M(G/K)| |M(K)| |(G/K)^ab (x) K|
// for central K.

namespace detail {

inline std::size_t intersection_log_order(const PcPresentation& g, const SubgroupBasis& a,
                                          const SubgroupBasis& b) {
  // |a ^ b| by enumerating the smaller subgroup
  const SubgroupBasis& small = a.members.size() <= b.members.size() ? a : b;
  const SubgroupBasis& big = a.members.size() <= b.members.size() ? b : a;
  if (small.members.size() > 24)
    throw CapExceeded("intersection_log_order: subgroup too large to enumerate");
  const int p = (int)g.p();
  std::uint64_t count = 0;
  std::vector<int> e(small.members.size(), 0);
  do {
    PcElement x = g.identity();
    for (std::size_t i = 0; i < small.members.size(); ++i)
      if (e[i]) x = multiply(g, x, power(g, small.members[i], e[i]));
    if (contains(g, big, x)) ++count;
  } while (detail::odometer_next(e, p));
  std::size_t lg = 0;
  while (count > 1) {
    if (count % p != 0) throw std::logic_error("intersection_log_order: not a p-power");
    count /= p;
    ++lg;
  }
  return lg;
}

struct JonesSides {
  std::size_t lhs_exp = 0, rhs_exp = 0;
};

inline JonesSides jones_sides(const PcPresentation& g, const SubgroupBasis& k,
                              const PcPresentation& quotient,
                              const AbelianInvariants& quotient_multiplier,
                              const AbelianInvariants& quotient_gab) {
  const unsigned long p = g.p();
  JonesSides s;
  AbelianInvariants mg = schur_multiplier(g).multiplier;
  SubgroupBasis derived = derived_subgroup(g);
  s.lhs_exp = mg.log_order(p) + intersection_log_order(g, k, derived);
  AbelianInvariants kinv = abelian_subgroup_invariants(g, k);
  s.rhs_exp = quotient_multiplier.log_order(p) + multiplier_of_abelian(kinv).log_order(p) +
              abelian_tensor(quotient_gab, kinv).log_order(p);
  (void)quotient;
  return s;
}

}  // namespace detail

inline bool jones_divisibility_check(const PcPresentation& g, const SubgroupBasis& k) {
  PcPresentation q = central_quotient(g, k);  // throws NotCentral if k is not
  AbelianInvariants mq = schur_multiplier(q).multiplier;
  AbelianInvariants qab = abelianization(q).first;
  auto s = detail::jones_sides(g, k, q, mq, qab);
  return s.lhs_exp <= s.rhs_exp;
}

// ---------------------------------------------------------------------------
// psi_2 and psi_3 for class-3 groups
//
// With Gbar = G/Z(G):
//   psi2(x1 (x) x2 (x) x3) = [x1,x2]|(gamma2/gamma3) (x) x3bar + cyclic
//   psi3(x1 (x) ... (x) x4) = [[x1,x2],x3] (x) x4bar
//                             + [x4,[x1,x2]] (x) x3bar
//                             + [[x3,x4],x1] (x) x2bar
//                             + [x2,[x3,x4]] (x) x1bar
// evaluated on a basis of Gbar^ab.  Implemented for elementary abelian
// sections only, which covers every group the bound machinery cares about.

struct NonElementarySection : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// coordinates of the elementary abelian quotient G/H on the generator
// indices not led by H's basis
struct ElemQuotientCoords {
  SubgroupBasis h;
  std::vector<std::size_t> free_pos;

  std::vector<int> coord(const PcPresentation& g, const PcElement& x) const {
    PcElement r = sift(g, h, x);
    std::vector<int> c(free_pos.size(), 0);
    for (std::size_t i = 0; i < free_pos.size(); ++i) c[i] = r.exps[free_pos[i]];
    return c;
  }
};

inline ElemQuotientCoords elem_quotient(const PcPresentation& g, SubgroupBasis h,
                                        const char* what) {
  ElemQuotientCoords q;
  q.h = std::move(h);
  std::vector<bool> led(g.n(), false);
  for (const PcElement& m : q.h.members) led[(std::size_t)m.leading()] = true;
  for (std::size_t i = 0; i < g.n(); ++i)
    if (!led[i]) q.free_pos.push_back(i);
  for (std::size_t i = 0; i < g.n(); ++i)
    if (!contains(g, q.h, power(g, g.generator(i), (long long)g.p())))
      throw NonElementarySection(std::string(what) + ": quotient is not elementary abelian");
  return q;
}

// coordinates of the elementary abelian section big/small
struct SectionCoords {
  SubgroupBasis ext;            // basis of big extending small's
  std::vector<std::size_t> nw;  // positions of the members outside small
  std::size_t dim() const { return nw.size(); }

  std::vector<int> coord(const PcPresentation& g, const PcElement& x) const {
    std::vector<int> used;
    PcElement r = sift_with_exponents(g, ext, x, used);
    if (!r.is_identity())
      throw std::invalid_argument("SectionCoords: element outside the subgroup");
    std::vector<int> c(nw.size(), 0);
    for (std::size_t i = 0; i < nw.size(); ++i) c[i] = used[nw[i]];
    return c;
  }
};

inline SectionCoords section(const PcPresentation& g, const SubgroupBasis& big,
                             const SubgroupBasis& small, const char* what) {
  SectionCoords s;
  s.ext = small;
  for (const PcElement& m : big.members) {
    PcElement r = sift(g, s.ext, m);
    if (!r.is_identity()) basis_insert(g, s.ext, r);
  }
  close_under_products(g, s.ext);
  std::vector<bool> small_led(g.n(), false);
  for (const PcElement& m : small.members) small_led[(std::size_t)m.leading()] = true;
  for (std::size_t i = 0; i < s.ext.members.size(); ++i)
    if (!small_led[(std::size_t)s.ext.members[i].leading()]) s.nw.push_back(i);
  for (std::size_t i : s.nw)
    if (!contains(g, small, power(g, s.ext.members[i], (long long)g.p())))
      throw NonElementarySection(std::string(what) + ": section is not elementary abelian");
  return s;
}

struct Class3Data {
  SubgroupBasis gamma2, gamma3;
  ElemQuotientCoords gbar_ab;  // of G / (gamma2 Z(G))
  SectionCoords sec23;         // gamma2 / gamma3
  SectionCoords sec3;          // gamma3 / 1
  std::vector<PcElement> reps;
};

inline Class3Data class3_data(const PcPresentation& g, const CenterOptions& opt,
                              const char* what) {
  auto series = lower_central_series(g);
  if (series.size() != 4)
    throw std::invalid_argument(std::string(what) + ": nilpotency class must be exactly 3");
  Class3Data d;
  d.gamma2 = series[1];
  d.gamma3 = series[2];
  SubgroupBasis z = center(g, opt);
  std::vector<PcElement> hgens;
  for (const PcElement& m : d.gamma2.members) hgens.push_back(m);
  for (const PcElement& m : z.members) hgens.push_back(m);
  d.gbar_ab = elem_quotient(g, normal_closure(g, hgens), what);
  d.sec23 = section(g, d.gamma2, d.gamma3, what);
  d.sec3 = section(g, d.gamma3, SubgroupBasis{}, what);
  for (std::size_t i : d.gbar_ab.free_pos) d.reps.push_back(g.generator(i));
  return d;
}

inline std::size_t span_rank(std::vector<std::vector<int>> rows, int p) {
  return fp_rank(std::move(rows), p);
}

}  // namespace detail

/// F_p-dimension of Image(psi2) inside (gamma2/gamma3) (x) Gbar^ab.
inline std::size_t psi2_image(const PcPresentation& g, const CenterOptions& opt = {}) {
  auto d = detail::class3_data(g, opt, "psi2_image");
  const int p = (int)g.p();
  const std::size_t db = d.reps.size();
  const std::size_t a = d.sec23.dim();
  if (db == 0 || a == 0) return 0;
  // pairwise commutator coordinates in gamma2/gamma3
  std::vector<std::vector<std::vector<int>>> cc(db, std::vector<std::vector<int>>(db));
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      cc[i][j] = d.sec23.coord(g, commutator(g, d.reps[i], d.reps[j]));
  std::vector<std::vector<int>> rows;
  for (std::size_t x1 = 0; x1 < db; ++x1)
    for (std::size_t x2 = 0; x2 < db; ++x2)
      for (std::size_t x3 = 0; x3 < db; ++x3) {
        std::vector<int> v(a * db, 0);
        auto add = [&](const std::vector<int>& w, std::size_t pos) {
          for (std::size_t r = 0; r < a; ++r)
            v[r * db + pos] = (int)(((long long)v[r * db + pos] + w[r]) % p);
        };
        add(cc[x1][x2], x3);
        add(cc[x2][x3], x1);
        add(cc[x3][x1], x2);
        rows.push_back(std::move(v));
      }
  return detail::span_rank(std::move(rows), p);
}

/// F_p-dimension of Image(psi3) inside gamma3 (x) Gbar^ab.
inline std::size_t psi3_image(const PcPresentation& g, const CenterOptions& opt = {}) {
  auto d = detail::class3_data(g, opt, "psi3_image");
  const int p = (int)g.p();
  const std::size_t db = d.reps.size();
  const std::size_t b = d.sec3.dim();
  if (db == 0 || b == 0) return 0;
  // [[x_i, x_j], x_k] coordinates in gamma3
  std::vector<std::vector<int>> dd(db * db * db);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j) {
      PcElement cij = commutator(g, d.reps[i], d.reps[j]);
      for (std::size_t k = 0; k < db; ++k)
        dd[(i * db + j) * db + k] = d.sec3.coord(g, commutator(g, cij, d.reps[k]));
    }
  std::vector<std::vector<int>> rows;
  for (std::size_t x1 = 0; x1 < db; ++x1)
    for (std::size_t x2 = 0; x2 < db; ++x2)
      for (std::size_t x3 = 0; x3 < db; ++x3)
        for (std::size_t x4 = 0; x4 < db; ++x4) {
          std::vector<int> v(b * db, 0);
          auto add = [&](const std::vector<int>& w, int sign, std::size_t pos) {
            for (std::size_t r = 0; r < b; ++r) {
              long long t = (long long)v[r * db + pos] + sign * (long long)w[r];
              v[r * db + pos] = (int)((t % p + p) % p);
            }
          };
          // [x4,[x1,x2]] = [[x1,x2],x4]^-1 and likewise for the last term
          add(dd[(x1 * db + x2) * db + x3], +1, x4);
          add(dd[(x1 * db + x2) * db + x4], -1, x3);
          add(dd[(x3 * db + x4) * db + x1], +1, x2);
          add(dd[(x3 * db + x4) * db + x2], -1, x1);
          rows.push_back(std::move(v));
        }
  return detail::span_rank(std::move(rows), p);
}

struct PsiImageReport {
  std::size_t dim_psi2 = 0;
  std::size_t dim_psi3 = 0;
  std::size_t lhs_exp = 0;
  std::size_t rhs_exp = 0;
  bool holds = false;
};

/// Ellis inequality for class-3 groups:
/// |M(G)| |gamma2| |Im psi2| |Im psi3| <=
///   |M(G^ab)| |gamma2/gamma3 (x) Gbar^ab| |gamma3 (x) Gbar^ab|.
inline PsiImageReport ellis_inequality_check(const PcPresentation& g,
                                             const CenterOptions& opt = {}) {
  auto d = detail::class3_data(g, opt, "ellis_inequality_check");
  const unsigned long p = g.p();
  PsiImageReport rep;
  rep.dim_psi2 = psi2_image(g, opt);
  rep.dim_psi3 = psi3_image(g, opt);

  AbelianInvariants mg = schur_multiplier(g).multiplier;
  rep.lhs_exp = mg.log_order(p) + d.gamma2.log_order() + rep.dim_psi2 + rep.dim_psi3;

  auto elem = [&](std::size_t rank) {
    AbelianInvariants inv;
    inv.torsion.assign(rank, Int((long)p));
    return inv;
  };
  AbelianInvariants gbar_ab = elem(d.reps.size());
  AbelianInvariants mab = multiplier_of_abelian(abelianization(g).first);
  rep.rhs_exp = mab.log_order(p) + abelian_tensor(elem(d.sec23.dim()), gbar_ab).log_order(p) +
                abelian_tensor(elem(d.sec3.dim()), gbar_ab).log_order(p);
  rep.holds = rep.lhs_exp <= rep.rhs_exp;
  return rep;
}

// ---------------------------------------------------------------------------
// central order-p quotient scan

struct QuotientRecord {
  PcElement k_generator;
  GroupReport report;        // of G/K
  bool bounds_applicable = false;  // quotient non-abelian
  bool attains = false;
  bool jones_ok = false;
  bool maximal_class_ok = true;  // |M| <= p^{n-2} when G/K has maximal class, n >= 4
};

struct ScanResult {
  GroupReport group;  // of G itself
  std::vector<QuotientRecord> quotients;
  bool group_maximal_class = false;
  bool maximal_class_ok = true;  // group-level |M| <= p^{n-2} check
  std::vector<std::string> alarms;
};

namespace detail {

inline void maximal_class_check(const GroupReport& r, bool& flag) {
  if (r.n >= 4 && r.c + 1 == r.n) flag = (long long)r.mult_exp <= (long long)r.n - 2;
}

inline void nonexistence_alarms(const GroupReport& r, const std::string& where,
                                std::vector<std::string>& alarms) {
  if (r.abelian || r.c < 3 || r.n < 6 || r.p == 2) return;
  long long green = green_exponent((long long)r.n);
  if ((long long)r.mult_exp == green - ((long long)r.n - 1) ||
      (long long)r.mult_exp == green - ((long long)r.n + 1))
    alarms.push_back(where + ": |M| = p^" + std::to_string(r.mult_exp) +
                     " matches a multiplier order excluded by published classification "
                     "results; flagged for review");
}

}  // namespace detail

/// Per-K records for every central order-p subgroup, plus group-level
/// maximal-class and nonexistence-tension checks.
inline ScanResult quotient_scan(const PcPresentation& g, const CenterOptions& opt = {}) {
  ScanResult out;
  out.group = analyze(g, opt);
  out.group_maximal_class = out.group.n >= 2 && out.group.c + 1 == out.group.n;
  detail::maximal_class_check(out.group, out.maximal_class_ok);
  detail::nonexistence_alarms(out.group, "group", out.alarms);

  auto ks = central_order_p_subgroups(g, opt);
  for (std::size_t idx = 0; idx < ks.size(); ++idx) {
    const SubgroupBasis& k = ks[idx];
    QuotientRecord rec;
    rec.k_generator = k.members.at(0);
    PcPresentation q = central_quotient(g, k);
    rec.report = analyze(q, opt);
    rec.bounds_applicable = !rec.report.abelian;
    rec.attains = attains_bound(rec.report);
    auto sides = detail::jones_sides(g, k, q, rec.report.multiplier, rec.report.gab);
    rec.jones_ok = sides.lhs_exp <= sides.rhs_exp;
    detail::maximal_class_check(rec.report, rec.maximal_class_ok);
    detail::nonexistence_alarms(rec.report, "quotient K" + std::to_string(idx + 1), out.alarms);
    out.quotients.push_back(std::move(rec));
  }
  return out;
}

}  // namespace schur

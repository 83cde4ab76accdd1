#pragma once

// Power-commutator presentation engine for finite p-groups.
//
// A presentation has generators g_0 < g_1 < ... < g_{n-1}, every generator of
// relative order p, and echelon relations
//
//     g_i^p       = word over generators with index > i
//     [g_j, g_i]  = word over generators with index > j        (j > i)
//
// where [x,y] = x^-1 y^-1 x y.  Normal forms are exponent vectors with
// entries in [0, p).  Unlisted commutators are trivial.
//
// Collection brings an arbitrary letter sequence to normal form by always
// rewriting at the leftmost violation (collection from the left): a descent
// g_a g_b with a > b becomes g_b g_a [g_a,g_b], and a run of p equal letters
// is contracted by the power relation.  Both rewrites insert only letters
// with strictly larger index, which is what makes the process terminate.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schur/intmat.hpp"

namespace schur {

/// Thrown when an enumeration or oracle exceeds its configured size cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Normal-form exponent vector; the unit of all group arithmetic.
struct PcElement {
  std::vector<int> exps;

  bool operator==(const PcElement&) const = default;
  bool is_identity() const {
    for (int e : exps)
      if (e) return false;
    return true;
  }
  /// index of the first nonzero exponent, or -1 for the identity
  int leading() const {
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i]) return (int)i;
    return -1;
  }
};

class PcPresentation {
 public:
  PcPresentation(unsigned long p, std::size_t n) : p_(p), n_(n) {
    if (!is_prime(p)) throw std::invalid_argument("PcPresentation: p must be prime");
    power_.assign(n, std::vector<int>(n, 0));
    comm_.assign(n * (n - 1) / 2, std::vector<int>(n, 0));
  }

  unsigned long p() const { return p_; }
  std::size_t n() const { return n_; }

  Int order() const {
    Int o = 1;
    for (std::size_t i = 0; i < n_; ++i) o *= (long)p_;
    return o;
  }

  /// order as a machine integer; throws CapExceeded above the given cap
  std::uint64_t order_u64(std::uint64_t cap) const {
    std::uint64_t o = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      if (o > cap / p_) throw CapExceeded("group order exceeds cap");
      o *= p_;
    }
    if (o > cap) throw CapExceeded("group order exceeds cap");
    return o;
  }

  const std::vector<int>& power_rhs(std::size_t i) const { return power_.at(i); }
  const std::vector<int>& comm_rhs(std::size_t j, std::size_t i) const {
    return comm_.at(cidx(j, i));
  }

  void set_power(std::size_t i, const std::vector<int>& word) {
    check_word(word, i, "power");
    power_.at(i) = word;
  }
  void set_comm(std::size_t j, std::size_t i, const std::vector<int>& word) {
    if (j <= i) throw std::invalid_argument("set_comm: need j > i");
    check_word(word, j, "comm");
    comm_.at(cidx(j, i)) = word;
  }

  bool is_abelian() const {
    for (const auto& w : comm_)
      for (int e : w)
        if (e) return false;
    return true;
  }

  PcElement identity() const { return PcElement{std::vector<int>(n_, 0)}; }
  PcElement generator(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("generator index out of range");
    PcElement e = identity();
    e.exps[i] = 1;
    return e;
  }

  bool operator==(const PcPresentation&) const = default;

 private:
  std::size_t cidx(std::size_t j, std::size_t i) const {
    if (j >= n_ || i >= j) throw std::out_of_range("commutator index out of range");
    return j * (j - 1) / 2 + i;
  }
  void check_word(const std::vector<int>& w, std::size_t above, const char* what) const {
    if (w.size() != n_) throw std::invalid_argument(std::string(what) + ": word length mismatch");
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (w[t] < 0 || (unsigned long)w[t] >= p_)
        throw std::invalid_argument(std::string(what) + ": exponent out of range");
      if (w[t] && t <= above)
        throw std::invalid_argument(std::string(what) + ": echelon violation (uses index <= lhs)");
    }
  }

  unsigned long p_;
  std::size_t n_;
  std::vector<std::vector<int>> power_;  // n normal words
  std::vector<std::vector<int>> comm_;   // triangular, j*(j-1)/2 + i
};

namespace detail {

struct NoHooks {
  void power(std::size_t) {}
  void comm(std::size_t, std::size_t) {}
};

inline void append_expansion(std::vector<int>& w, const std::vector<int>& exps) {
  for (std::size_t i = 0; i < exps.size(); ++i)
    for (int c = 0; c < exps[i]; ++c) w.push_back((int)i);
}

constexpr std::size_t kCollectStepCap = 400'000'000;
constexpr std::size_t kCollectLengthCap = 4'000'000;

}  // namespace detail

/// Collects a flat letter sequence (generator indices, one letter per unit
/// exponent) to its normal form.  Hooks fire once per relation application,
/// which is how the tailed collector of the multiplier module tracks tails.
template <class Hooks = detail::NoHooks>
inline PcElement collect_letters(const PcPresentation& g, std::vector<int>& w,
                                 Hooks&& hooks = Hooks{}) {
  const int p = (int)g.p();
  const int n = (int)g.n();
  for (int c : w)
    if (c < 0 || c >= n) throw std::out_of_range("collect: generator index out of range");

  std::size_t i = 0, steps = 0;
  std::vector<int> buf;
  while (i < w.size()) {
    if (++steps > detail::kCollectStepCap) throw std::runtime_error("collect: step cap exceeded");
    if (w.size() > detail::kCollectLengthCap) throw std::runtime_error("collect: word length cap exceeded");

    if (i + 1 < w.size() && w[i] > w[i + 1]) {
      // descent: g_a g_b -> g_b g_a [g_a, g_b]
      int a = w[i], b = w[i + 1];
      const std::vector<int>& c = g.comm_rhs(a, b);
      w[i] = b;
      w[i + 1] = a;
      buf.clear();
      detail::append_expansion(buf, c);
      if (!buf.empty()) w.insert(w.begin() + (long)(i + 2), buf.begin(), buf.end());
      hooks.comm((std::size_t)a, (std::size_t)b);
      i = (i >= (std::size_t)p) ? i - (std::size_t)p : 0;
      continue;
    }
    if (i + (std::size_t)p <= w.size()) {
      bool run = true;
      for (int s = 1; s < p; ++s)
        if (w[i + s] != w[i]) {
          run = false;
          break;
        }
      if (run) {
        // p-run: g_a^p -> power word
        int a = w[i];
        const std::vector<int>& rhs = g.power_rhs(a);
        buf.clear();
        detail::append_expansion(buf, rhs);
        w.erase(w.begin() + (long)i, w.begin() + (long)(i + p));
        if (!buf.empty()) w.insert(w.begin() + (long)i, buf.begin(), buf.end());
        hooks.power((std::size_t)a);
        i = (i >= (std::size_t)p) ? i - (std::size_t)p : 0;
        continue;
      }
    }
    ++i;
  }

  PcElement e = g.identity();
  for (int c : w) ++e.exps[c];
  for (int x : e.exps)
    if (x >= p) throw std::logic_error("collect: run survived collection");
  return e;
}

inline std::vector<int> flatten(const PcElement& e) {
  std::vector<int> w;
  detail::append_expansion(w, e.exps);
  return w;
}

inline PcElement collect_flat(const PcPresentation& g, std::vector<int> w) {
  return collect_letters(g, w);
}

inline PcElement multiply(const PcPresentation& g, const PcElement& a, const PcElement& b) {
  std::vector<int> w;
  w.reserve(a.exps.size() * 4);
  detail::append_expansion(w, a.exps);
  detail::append_expansion(w, b.exps);
  return collect_letters(g, w);
}

/// Solves a * x = 1 by clearing exponents from the lowest index up; right
/// multiplication by g_i^t never changes exponents below i.
inline PcElement inverse(const PcPresentation& g, const PcElement& a) {
  const int p = (int)g.p();
  PcElement x = g.identity();
  PcElement cur = a;
  for (std::size_t i = 0; i < g.n(); ++i) {
    int t = (p - cur.exps[i]) % p;
    if (t == 0) continue;
    std::vector<int> w;
    detail::append_expansion(w, x.exps);
    for (int c = 0; c < t; ++c) w.push_back((int)i);
    x = collect_letters(g, w);
    std::vector<int> v;
    detail::append_expansion(v, cur.exps);
    for (int c = 0; c < t; ++c) v.push_back((int)i);
    cur = collect_letters(g, v);
  }
  if (!cur.is_identity()) throw std::logic_error("inverse: residue after back-substitution");
  return x;
}

inline PcElement power(const PcPresentation& g, const PcElement& a, long long k) {
  if (k < 0) return power(g, inverse(g, a), -k);
  PcElement acc = g.identity();
  PcElement base = a;
  while (k > 0) {
    if (k & 1) acc = multiply(g, acc, base);
    k >>= 1;
    if (k) base = multiply(g, base, base);
  }
  return acc;
}

inline PcElement commutator(const PcPresentation& g, const PcElement& a, const PcElement& b) {
  PcElement ia = inverse(g, a), ib = inverse(g, b);
  return multiply(g, multiply(g, ia, ib), multiply(g, a, b));
}

inline PcElement conjugate(const PcPresentation& g, const PcElement& a, const PcElement& b) {
  return multiply(g, inverse(g, b), multiply(g, a, b));
}

/// Collects a syllable word (generator, exponent).  Negative exponents are
/// resolved through element inversion and are therefore not available to the
/// tailed collector.
inline PcElement collect(const PcPresentation& g,
                         const std::vector<std::pair<int, long long>>& word) {
  bool neg = false;
  for (const auto& [gen, e] : word) {
    if (gen < 0 || (std::size_t)gen >= g.n()) throw std::out_of_range("collect: index out of range");
    if (e < 0) neg = true;
  }
  if (!neg) {
    std::vector<int> w;
    for (const auto& [gen, e] : word)
      for (long long c = 0; c < e; ++c) w.push_back(gen);
    return collect_letters(g, w);
  }
  PcElement acc = g.identity();
  for (const auto& [gen, e] : word) acc = multiply(g, acc, power(g, g.generator(gen), e));
  return acc;
}

// ---------------------------------------------------------------------------
// consistency overlaps
//
// Families, with parenthesised parts collected first:
//   (a)  g_k (g_j g_i) = (g_k g_j) g_i                for k > j > i
//   (b1) (g_j^p) g_i   = g_j^{p-1} (g_j g_i)          for j > i
//   (b2) g_j (g_i^p)   = (g_j g_i) g_i^{p-1}          for j > i
//   (c)  g_i (g_i^p)   = (g_i^p) g_i
// The presentation defines a group of order p^n exactly when every overlap
// collects to the same normal form on both sides.

struct OverlapSide {
  std::vector<int> pre, inner, post;  // collect(pre + collect(inner) + post)
};

struct Overlap {
  std::string family;  // "a", "b1", "b2", "c"
  int i = -1, j = -1, k = -1;
  OverlapSide lhs, rhs;
};

template <class Fn>
inline void for_each_overlap(const PcPresentation& g, Fn&& fn) {
  const int n = (int)g.n();
  const int p = (int)g.p();
  auto rep = [&](int gen, int count) { return std::vector<int>(count, gen); };
  for (int k = 2; k < n; ++k)
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < j; ++i) {
        Overlap o;
        o.family = "a";
        o.i = i;
        o.j = j;
        o.k = k;
        o.lhs = {{k}, {j, i}, {}};
        o.rhs = {{}, {k, j}, {i}};
        fn(o);
      }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      Overlap o1;
      o1.family = "b1";
      o1.i = i;
      o1.j = j;
      o1.lhs = {{}, rep(j, p), {i}};
      o1.rhs = {rep(j, p - 1), {j, i}, {}};
      fn(o1);
      Overlap o2;
      o2.family = "b2";
      o2.i = i;
      o2.j = j;
      o2.lhs = {{j}, rep(i, p), {}};
      o2.rhs = {{}, {j, i}, rep(i, p - 1)};
      fn(o2);
    }
  for (int i = 0; i < n; ++i) {
    Overlap o;
    o.family = "c";
    o.i = i;
    o.lhs = {{i}, rep(i, p), {}};
    o.rhs = {{}, rep(i, p), {i}};
    fn(o);
  }
}

template <class Hooks = detail::NoHooks>
inline PcElement collect_side(const PcPresentation& g, const OverlapSide& s,
                              Hooks&& hooks = Hooks{}) {
  std::vector<int> inner = s.inner;
  PcElement u = collect_letters(g, inner, hooks);
  std::vector<int> w = s.pre;
  detail::append_expansion(w, u.exps);
  w.insert(w.end(), s.post.begin(), s.post.end());
  return collect_letters(g, w, hooks);
}

struct ConsistencyViolation {
  std::string family;
  int i = -1, j = -1, k = -1;
  PcElement lhs, rhs;
};

/// Runs every overlap; an empty result means the presentation is consistent,
/// i.e. defines a group of order p^n.
inline std::vector<ConsistencyViolation> check_consistency(const PcPresentation& g) {
  std::vector<ConsistencyViolation> out;
  for_each_overlap(g, [&](const Overlap& o) {
    PcElement l = collect_side(g, o.lhs);
    PcElement r = collect_side(g, o.rhs);
    if (!(l == r)) out.push_back({o.family, o.i, o.j, o.k, l, r});
  });
  return out;
}

// ---------------------------------------------------------------------------
// subgroups

/// Echelonized generating sequence of a subgroup: strictly increasing
/// leading indices, each leading exponent 1.  Closure under powers,
/// commutators and conjugation is established by normal_closure, which makes
/// sifting a sound membership test and |H| = p^{#members}.
struct SubgroupBasis {
  std::vector<PcElement> members;

  std::size_t log_order() const { return members.size(); }
  bool operator==(const SubgroupBasis&) const = default;
};

inline int mod_inverse(int a, int p) {
  int t = 0, newt = 1, r = p, newr = a % p;
  while (newr != 0) {
    int q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (r != 1) throw std::logic_error("mod_inverse: not invertible");
  return ((t % p) + p) % p;
}

/// Reduces x against the basis; the remainder is the canonical coset
/// representative supported away from the members' leading indices.
inline PcElement sift(const PcPresentation& g, const SubgroupBasis& b, PcElement x) {
  for (const PcElement& m : b.members) {
    if (x.is_identity()) break;
    int l = m.leading();
    if (l < 0) continue;
    int e = x.exps[l];
    if (e == 0) continue;
    x = multiply(g, inverse(g, power(g, m, e)), x);
  }
  return x;
}

/// Same reduction, also reporting which member powers were used.
inline PcElement sift_with_exponents(const PcPresentation& g, const SubgroupBasis& b,
                                     PcElement x, std::vector<int>& used) {
  used.assign(b.members.size(), 0);
  for (std::size_t idx = 0; idx < b.members.size(); ++idx) {
    if (x.is_identity()) break;
    const PcElement& m = b.members[idx];
    int l = m.leading();
    if (l < 0) continue;
    int e = x.exps[l];
    if (e == 0) continue;
    used[idx] = e;
    x = multiply(g, inverse(g, power(g, m, e)), x);
  }
  return x;
}

inline bool contains(const PcPresentation& g, const SubgroupBasis& b, const PcElement& x) {
  return sift(g, b, x).is_identity();
}

namespace detail {

// inserts a nonidentity element, normalized to leading exponent 1, keeping
// members ordered by leading index
inline void basis_insert(const PcPresentation& g, SubgroupBasis& b, PcElement x) {
  int l = x.leading();
  PcElement m = power(g, x, mod_inverse(x.exps[l], (int)g.p()));
  auto it = b.members.begin();
  while (it != b.members.end() && it->leading() < l) ++it;
  if (it != b.members.end() && it->leading() == l)
    throw std::logic_error("basis_insert: duplicate leading index");
  b.members.insert(it, std::move(m));
}

// closes an echelonized set under p-th powers and pairwise commutators so
// that sifting computes canonical coordinates inside the generated subgroup
inline void close_under_products(const PcPresentation& g, SubgroupBasis& b) {
  bool added = true;
  while (added) {
    added = false;
    std::vector<PcElement> cand;
    for (const PcElement& m : b.members) cand.push_back(power(g, m, (long long)g.p()));
    for (std::size_t s = 0; s < b.members.size(); ++s)
      for (std::size_t t = s + 1; t < b.members.size(); ++t)
        cand.push_back(commutator(g, b.members[s], b.members[t]));
    for (PcElement& c : cand) {
      PcElement r = sift(g, b, c);
      if (!r.is_identity()) {
        basis_insert(g, b, r);
        added = true;
      }
    }
  }
}

}  // namespace detail

/// Smallest normal subgroup containing the given elements.
inline SubgroupBasis normal_closure(const PcPresentation& g, const std::vector<PcElement>& gens) {
  SubgroupBasis b;
  for (const PcElement& x : gens) {
    PcElement r = sift(g, b, x);
    if (!r.is_identity()) detail::basis_insert(g, b, r);
  }
  bool added = true;
  while (added) {
    added = false;
    std::vector<PcElement> cand;
    for (const PcElement& m : b.members) {
      for (std::size_t t = 0; t < g.n(); ++t) cand.push_back(conjugate(g, m, g.generator(t)));
      cand.push_back(power(g, m, (long long)g.p()));
    }
    for (std::size_t s = 0; s < b.members.size(); ++s)
      for (std::size_t t = s + 1; t < b.members.size(); ++t)
        cand.push_back(commutator(g, b.members[s], b.members[t]));
    for (PcElement& c : cand) {
      PcElement r = sift(g, b, c);
      if (!r.is_identity()) {
        detail::basis_insert(g, b, r);
        added = true;
      }
    }
  }
  return b;
}

inline SubgroupBasis whole_group_basis(const PcPresentation& g) {
  SubgroupBasis b;
  for (std::size_t i = 0; i < g.n(); ++i) b.members.push_back(g.generator(i));
  return b;
}

inline SubgroupBasis trivial_subgroup() { return SubgroupBasis{}; }

inline SubgroupBasis derived_subgroup(const PcPresentation& g) {
  std::vector<PcElement> gens;
  for (std::size_t j = 1; j < g.n(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      gens.push_back(commutator(g, g.generator(j), g.generator(i)));
  return normal_closure(g, gens);
}

/// gamma_1 = G, gamma_{i+1} = [gamma_i, G]; the returned chain ends with the
/// trivial term, so the nilpotency class is size() - 1.
inline std::vector<SubgroupBasis> lower_central_series(const PcPresentation& g) {
  std::vector<SubgroupBasis> series;
  series.push_back(whole_group_basis(g));
  while (!series.back().members.empty()) {
    const SubgroupBasis& cur = series.back();
    std::vector<PcElement> gens;
    for (const PcElement& m : cur.members)
      for (std::size_t t = 0; t < g.n(); ++t) {
        PcElement c = commutator(g, m, g.generator(t));
        if (!c.is_identity()) gens.push_back(c);
      }
    SubgroupBasis nxt = normal_closure(g, gens);
    if (nxt.members.size() >= cur.members.size() && !cur.members.empty())
      throw std::logic_error("lower_central_series: chain failed to decrease");
    series.push_back(std::move(nxt));
  }
  return series;
}

inline std::size_t nilpotency_class(const PcPresentation& g) {
  return lower_central_series(g).size() - 1;
}

inline bool is_elementary_abelian(const PcPresentation& g, const SubgroupBasis& sub) {
  for (std::size_t s = 0; s < sub.members.size(); ++s) {
    if (!power(g, sub.members[s], (long long)g.p()).is_identity()) return false;
    for (std::size_t t = s + 1; t < sub.members.size(); ++t)
      if (!commutator(g, sub.members[s], sub.members[t]).is_identity()) return false;
  }
  return true;
}

/// Invariants of an abelian subgroup given by its basis.
inline AbelianInvariants abelian_subgroup_invariants(const PcPresentation& g,
                                                     const SubgroupBasis& sub) {
  const std::size_t m = sub.members.size();
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = s + 1; t < m; ++t)
      if (!commutator(g, sub.members[s], sub.members[t]).is_identity())
        throw std::invalid_argument("abelian_subgroup_invariants: subgroup is not abelian");
  IntMatrix rel(m, m);
  std::vector<int> used;
  for (std::size_t s = 0; s < m; ++s) {
    PcElement ps = power(g, sub.members[s], (long long)g.p());
    PcElement r = sift_with_exponents(g, sub, ps, used);
    if (!r.is_identity())
      throw std::logic_error("abelian_subgroup_invariants: power escapes subgroup");
    for (std::size_t t = 0; t < m; ++t) rel.at(s, t) = -used[t];
    rel.at(s, s) += (long)g.p();
  }
  return abelian_invariants(rel, m);
}

// ---------------------------------------------------------------------------
// F_p linear algebra (small dense)

namespace detail {

// reduced row echelon form in place; returns pivot columns
inline std::vector<std::size_t> fp_rref(std::vector<std::vector<int>>& m, int p) {
  std::vector<std::size_t> pivots;
  std::size_t rows = m.size();
  if (rows == 0) return pivots;
  std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] % p == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    int inv = mod_inverse(((m[r][c] % p) + p) % p, p);
    for (std::size_t j = c; j < cols; ++j) m[r][j] = (int)(((long long)m[r][j] * inv) % p + p) % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      int f = ((m[i][c] % p) + p) % p;
      if (!f) continue;
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] = (int)((((long long)m[i][j] - (long long)f * m[r][j]) % p + p) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t fp_rank(std::vector<std::vector<int>> m, int p) {
  return fp_rref(m, p).size();
}

// kernel basis in reduced echelon form (leading ones, increasing leading
// positions)
inline std::vector<std::vector<int>> fp_kernel(std::vector<std::vector<int>> m, std::size_t cols,
                                               int p) {
  auto pivots = fp_rref(m, p);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<int>> ker;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      int val = r < m.size() ? m[r][free] : 0;
      v[pivots[r]] = ((-val) % p + p) % p;
    }
    ker.push_back(std::move(v));
  }
  return ker;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// center

struct CenterOptions {
  std::uint64_t enumeration_cap = 10'000'000;  // elements
};

namespace detail {

// The set of central elements of a class-<=2 group with elementary derived
// subgroup is cut out by linear conditions on exponent vectors:
// [prod g_j^{e_j}, g_t] = prod [g_j,g_t]^{e_j} once commutators are central.
inline std::optional<SubgroupBasis> center_linear(const PcPresentation& g,
                                                  const SubgroupBasis& derived) {
  const int p = (int)g.p();
  const std::size_t n = g.n();
  if (!is_elementary_abelian(g, derived)) return std::nullopt;
  for (const PcElement& m : derived.members)
    for (std::size_t t = 0; t < n; ++t)
      if (!commutator(g, m, g.generator(t)).is_identity()) return std::nullopt;  // class > 2

  const std::size_t dim = derived.members.size();
  std::vector<int> used;
  std::vector<std::vector<int>> rows;
  for (std::size_t t = 0; t < n; ++t) {
    // block of dim constraints: sum_j e_j * coord([g_j, g_t]) = 0
    std::vector<std::vector<int>> block(dim, std::vector<int>(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
      PcElement c = commutator(g, g.generator(j), g.generator(t));
      PcElement r = sift_with_exponents(g, derived, c, used);
      if (!r.is_identity()) return std::nullopt;
      for (std::size_t d = 0; d < dim; ++d) block[d][j] = used[d] % p;
    }
    for (auto& row : block) rows.push_back(std::move(row));
  }
  auto ker = detail::fp_kernel(std::move(rows), n, p);
  // kernel vectors have unit entries at free columns but may collide on
  // leading indices; re-echelonize as an F_p row space
  auto pivots = detail::fp_rref(ker, p);
  SubgroupBasis z;
  for (std::size_t r = 0; r < pivots.size(); ++r) z.members.push_back(PcElement{ker[r]});
  return z;
}

// odometer over all exponent vectors; returns false when wrapped
inline bool odometer_next(std::vector<int>& e, int p) {
  for (std::size_t i = e.size(); i-- > 0;) {
    if (++e[i] < p) return true;
    e[i] = 0;
  }
  return false;
}

}  // namespace detail

/// Basis of { z : [z, g_i] = 1 for all i }.  Uses exponent-vector linear
/// algebra when the group has class <= 2 with elementary derived subgroup,
/// and falls back to full enumeration (capped) otherwise.
inline SubgroupBasis center(const PcPresentation& g, const CenterOptions& opt = {}) {
  if (g.is_abelian()) return whole_group_basis(g);
  if (auto z = detail::center_linear(g, derived_subgroup(g))) return *z;

  std::uint64_t size = g.order_u64(opt.enumeration_cap);
  const int p = (int)g.p();
  std::vector<PcElement> gens;
  for (std::size_t t = 0; t < g.n(); ++t) gens.push_back(g.generator(t));

  std::vector<PcElement> central;
  std::vector<int> e(g.n(), 0);
  std::uint64_t seen = 0;
  do {
    ++seen;
    PcElement x{e};
    bool ok = true;
    for (const PcElement& gen : gens) {
      if (!(multiply(g, x, gen) == multiply(g, gen, x))) {
        ok = false;
        break;
      }
    }
    if (ok) central.push_back(std::move(x));
  } while (detail::odometer_next(e, p));
  if (seen != size) throw std::logic_error("center: enumeration miscount");

  SubgroupBasis z;
  bool added = true;
  while (added) {
    added = false;
    for (const PcElement& x : central) {
      PcElement r = sift(g, z, x);
      if (!r.is_identity()) {
        detail::basis_insert(g, z, r);
        added = true;
      }
    }
  }
  std::uint64_t zsize = 1;
  for (std::size_t i = 0; i < z.members.size(); ++i) zsize *= (std::uint64_t)p;
  if (zsize != central.size()) throw std::logic_error("center: basis does not span");
  return z;
}

/// Largest elementary abelian subgroup of the (abelian) subgroup Z.
inline SubgroupBasis elementary_socle(const PcPresentation& g, const SubgroupBasis& z) {
  if (is_elementary_abelian(g, z)) return z;
  const int p = (int)g.p();
  std::vector<PcElement> kept;
  std::vector<int> e(z.members.size(), 0);
  do {
    PcElement x = g.identity();
    for (std::size_t i = 0; i < z.members.size(); ++i)
      if (e[i]) x = multiply(g, x, power(g, z.members[i], e[i]));
    if (!x.is_identity() && power(g, x, p).is_identity()) kept.push_back(std::move(x));
  } while (detail::odometer_next(e, p));
  SubgroupBasis s;
  bool added = true;
  while (added) {
    added = false;
    for (const PcElement& x : kept) {
      PcElement r = sift(g, s, x);
      if (!r.is_identity()) {
        detail::basis_insert(g, s, r);
        added = true;
      }
    }
  }
  return s;
}

/// One basis per order-p subgroup of Z(G); these are the points of the
/// projective space over the socle, (p^s - 1)/(p - 1) of them.
inline std::vector<SubgroupBasis> central_order_p_subgroups(const PcPresentation& g,
                                                            const CenterOptions& opt = {}) {
  SubgroupBasis z = center(g, opt);
  SubgroupBasis socle = elementary_socle(g, z);
  const int p = (int)g.p();
  const std::size_t s = socle.members.size();
  std::vector<SubgroupBasis> out;
  for (std::size_t l = 0; l < s; ++l) {
    std::vector<int> e(s - l - 1, 0);
    bool more = true;
    while (more) {
      PcElement x = socle.members[l];
      for (std::size_t j = 0; j < e.size(); ++j)
        if (e[j]) x = multiply(g, x, power(g, socle.members[l + 1 + j], e[j]));
      SubgroupBasis k;
      k.members.push_back(std::move(x));
      out.push_back(std::move(k));
      more = e.empty() ? false : detail::odometer_next(e, p);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// abelianization

/// Invariants of G/G' together with d(G) = dim G/Phi(G).
inline std::pair<AbelianInvariants, std::size_t> abelianization(const PcPresentation& g) {
  const std::size_t n = g.n();
  IntMatrix rel(n + n * (n - 1) / 2, n);
  std::size_t r = 0;
  for (std::size_t i = 0; i < n; ++i, ++r) {
    for (std::size_t t = 0; t < n; ++t) rel.at(r, t) = -Int((long)g.power_rhs(i)[t]);
    rel.at(r, i) += (long)g.p();
  }
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i, ++r)
      for (std::size_t t = 0; t < n; ++t) rel.at(r, t) = (long)g.comm_rhs(j, i)[t];
  AbelianInvariants inv = abelian_invariants(rel, n);
  if (inv.free_rank != 0) throw std::logic_error("abelianization: unexpected free rank");
  return {inv, inv.torsion.size()};
}

// ---------------------------------------------------------------------------
// quotients and products

struct NotCentral : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline bool is_central_element(const PcPresentation& g, const PcElement& z) {
  for (std::size_t t = 0; t < g.n(); ++t)
    if (!(multiply(g, z, g.generator(t)) == multiply(g, g.generator(t), z))) return false;
  return true;
}

// exponents of x over the sequence with g_l replaced by the central z
// (leading index l, leading exponent 1), with the z coordinate dropped
inline std::vector<int> reexpress_drop(const PcPresentation& g, const PcElement& z, int l,
                                       const PcElement& x) {
  int c = x.exps[l];
  PcElement y = c ? multiply(g, inverse(g, power(g, z, c)), x) : x;
  if (y.exps[l] != 0) throw std::logic_error("reexpress: coordinate did not clear");
  std::vector<int> out;
  out.reserve(g.n() - 1);
  for (std::size_t i = 0; i < g.n(); ++i)
    if ((int)i != l) out.push_back(y.exps[i]);
  return out;
}

inline PcPresentation quotient_by_central_generator(const PcPresentation& g, const PcElement& z) {
  if (!is_central_element(g, z)) throw NotCentral("quotient: element is not central");
  int l = z.leading();
  if (l < 0) throw std::invalid_argument("quotient: trivial generator");
  if (z.exps[l] != 1) throw std::invalid_argument("quotient: leading exponent must be 1");
  if (!power(g, z, (long long)g.p()).is_identity())
    throw std::invalid_argument("quotient: generator must have order p");

  const std::size_t n = g.n();
  PcPresentation q(g.p(), n - 1);
  auto newidx = [&](std::size_t i) { return i < (std::size_t)l ? i : i - 1; };
  for (std::size_t i = 0; i < n; ++i) {
    if ((int)i == l) continue;
    q.set_power(newidx(i), reexpress_drop(g, z, l, PcElement{g.power_rhs(i)}));
  }
  for (std::size_t j = 1; j < n; ++j) {
    if ((int)j == l) continue;
    for (std::size_t i = 0; i < j; ++i) {
      if ((int)i == l) continue;
      q.set_comm(newidx(j), newidx(i), reexpress_drop(g, z, l, PcElement{g.comm_rhs(j, i)}));
    }
  }
  if (!check_consistency(q).empty())
    throw std::logic_error("quotient: rebuilt presentation is inconsistent");

  // spot-check that x -> image is a homomorphism on the generators
  auto image = [&](const PcElement& x) { return PcElement{reexpress_drop(g, z, l, x)}; };
  std::mt19937 rng(0xc0ffee);
  std::uniform_int_distribution<int> dist(0, (int)g.p() - 1);
  for (int trial = 0; trial < 32; ++trial) {
    PcElement a = g.identity(), b = g.identity();
    for (std::size_t i = 0; i < n; ++i) {
      a.exps[i] = dist(rng);
      b.exps[i] = dist(rng);
    }
    PcElement lhs = image(multiply(g, a, b));
    PcElement rhs = multiply(q, image(a), image(b));
    if (!(lhs == rhs)) throw std::logic_error("quotient: image is not a homomorphism");
  }
  return q;
}

}  // namespace detail

/// Presentation of G/K for a central subgroup K, built by one basis change
/// per order-p layer of K.  A trivial K returns an isomorphic copy.
inline PcPresentation central_quotient(const PcPresentation& g, const SubgroupBasis& k) {
  for (const PcElement& m : k.members)
    if (!detail::is_central_element(g, m)) throw NotCentral("central_quotient: K is not central");
  PcPresentation cur = g;
  std::vector<PcElement> members = k.members;
  while (!members.empty()) {
    // the deepest member always has order exactly p
    PcElement z = members.back();
    members.pop_back();
    int l = z.leading();
    PcPresentation nxt = detail::quotient_by_central_generator(cur, z);
    for (PcElement& m : members) m = PcElement{detail::reexpress_drop(cur, z, l, m)};
    cur = std::move(nxt);
  }
  return cur;
}

inline PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b) {
  if (a.p() != b.p()) throw std::invalid_argument("direct_product: prime mismatch");
  const std::size_t na = a.n(), nb = b.n();
  PcPresentation g(a.p(), na + nb);
  auto widen_a = [&](const std::vector<int>& w) {
    std::vector<int> out(na + nb, 0);
    std::copy(w.begin(), w.end(), out.begin());
    return out;
  };
  auto widen_b = [&](const std::vector<int>& w) {
    std::vector<int> out(na + nb, 0);
    std::copy(w.begin(), w.end(), out.begin() + (long)na);
    return out;
  };
  for (std::size_t i = 0; i < na; ++i) g.set_power(i, widen_a(a.power_rhs(i)));
  for (std::size_t i = 0; i < nb; ++i) g.set_power(na + i, widen_b(b.power_rhs(i)));
  for (std::size_t j = 1; j < na; ++j)
    for (std::size_t i = 0; i < j; ++i) g.set_comm(j, i, widen_a(a.comm_rhs(j, i)));
  for (std::size_t j = 1; j < nb; ++j)
    for (std::size_t i = 0; i < j; ++i) g.set_comm(na + j, na + i, widen_b(b.comm_rhs(j, i)));
  return g;
}

// ---------------------------------------------------------------------------
// explicit multiplication tables

struct MultTable {
  std::size_t size = 0;
  std::vector<std::uint32_t> t;  // size * size

  std::uint32_t at(std::size_t i, std::size_t j) const { return t[i * size + j]; }
  std::uint32_t& at(std::size_t i, std::size_t j) { return t[i * size + j]; }
};

namespace detail {

struct TableInfo {
  std::size_t identity = 0;
  unsigned long p = 2;
  std::size_t exponent = 0;  // size == p^exponent
};

inline TableInfo validate_table(const MultTable& tb) {
  const std::size_t m = tb.size;
  if (m == 0 || tb.t.size() != m * m) throw std::invalid_argument("table: malformed");
  for (std::uint32_t v : tb.t)
    if (v >= m) throw std::invalid_argument("table: entry out of range");

  TableInfo info;
  bool found = false;
  for (std::size_t e = 0; e < m && !found; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < m && ok; ++x)
      if (tb.at(e, x) != x || tb.at(x, e) != x) ok = false;
    if (ok) {
      info.identity = e;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("table: no identity element");

  std::vector<bool> seen(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t j = 0; j < m; ++j) seen[tb.at(i, j)] = true;
    for (bool s : seen)
      if (!s) throw std::invalid_argument("table: row is not a permutation");
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t j = 0; j < m; ++j) seen[tb.at(j, i)] = true;
    for (bool s : seen)
      if (!s) throw std::invalid_argument("table: column is not a permutation");
  }

  if (m <= 64) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t c = 0; c < m; ++c)
          if (tb.at(tb.at(a, b), c) != tb.at(a, tb.at(b, c)))
            throw std::invalid_argument("table: not associative");
  } else {
    std::mt19937 rng(20240229);
    std::uniform_int_distribution<std::size_t> dist(0, m - 1);
    for (int s = 0; s < 20000; ++s) {
      std::size_t a = dist(rng), b = dist(rng), c = dist(rng);
      if (tb.at(tb.at(a, b), c) != tb.at(a, tb.at(b, c)))
        throw std::invalid_argument("table: not associative");
    }
  }

  std::size_t left = m;
  if (left == 1) {
    info.p = 2;
    info.exponent = 0;
    return info;
  }
  unsigned long p = 2;
  while (left % p != 0) ++p;
  std::size_t e = 0;
  while (left % p == 0) {
    left /= p;
    ++e;
  }
  if (left != 1) throw std::invalid_argument("table: order is not a prime power");
  info.p = p;
  info.exponent = e;
  return info;
}

inline std::size_t table_inverse(const MultTable& tb, std::size_t e, std::size_t x) {
  for (std::size_t y = 0; y < tb.size; ++y)
    if (tb.at(x, y) == e) return y;
  throw std::logic_error("table: no inverse");
}

inline std::size_t table_order(const MultTable& tb, std::size_t e, std::size_t x) {
  std::size_t ord = 1, cur = x;
  while (cur != e) {
    cur = tb.at(cur, x);
    ++ord;
  }
  return ord;
}

struct BuiltPcp {
  PcPresentation pcp;
  std::vector<std::size_t> gen_elems;                       // table element per pc generator
  std::function<std::vector<int>(std::size_t)> express;     // table element -> exponents
};

inline BuiltPcp build_pcp_from_table(const MultTable& tb, const TableInfo& info) {
  const std::size_t m = tb.size;
  const unsigned long p = info.p;
  if (m == 1) {
    BuiltPcp base{PcPresentation(p, 0), {}, [](std::size_t) { return std::vector<int>{}; }};
    return base;
  }

  // smallest central element of order p (z^(ord/p) of the first central
  // non-identity element keeps the choice deterministic)
  std::size_t z = m;
  for (std::size_t cand = 0; cand < m && z == m; ++cand) {
    if (cand == info.identity) continue;
    bool central = true;
    for (std::size_t x = 0; x < m && central; ++x)
      if (tb.at(cand, x) != tb.at(x, cand)) central = false;
    if (!central) continue;
    std::size_t ord = table_order(tb, info.identity, cand);
    std::size_t cur = cand;
    while (ord > p) {
      // cur^p
      std::size_t acc = info.identity;
      for (unsigned long s = 0; s < p; ++s) acc = tb.at(acc, cur);
      cur = acc;
      ord /= p;
    }
    z = cur;
  }
  if (z == m) throw std::logic_error("table: p-group without central element");

  // cosets of <z>
  std::vector<std::size_t> rep(m, m);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < m; ++x) {
    if (rep[x] != m) continue;
    std::size_t mn = x, cur = x;
    std::vector<std::size_t> orbit;
    for (unsigned long s = 0; s < p; ++s) {
      orbit.push_back(cur);
      mn = std::min(mn, cur);
      cur = tb.at(cur, z);
    }
    for (std::size_t y : orbit) rep[y] = mn;
    reps.push_back(mn);
  }
  std::sort(reps.begin(), reps.end());
  std::vector<std::size_t> qidx(m, 0);
  for (std::size_t i = 0; i < reps.size(); ++i) qidx[reps[i]] = i;

  MultTable q;
  q.size = reps.size();
  q.t.assign(q.size * q.size, 0);
  for (std::size_t i = 0; i < q.size; ++i)
    for (std::size_t j = 0; j < q.size; ++j)
      q.at(i, j) = (std::uint32_t)qidx[rep[tb.at(reps[i], reps[j])]];

  TableInfo qinfo;
  qinfo.identity = qidx[rep[info.identity]];
  qinfo.p = p;
  qinfo.exponent = info.exponent - 1;
  BuiltPcp sub = build_pcp_from_table(q, qinfo);

  const std::size_t nq = sub.pcp.n();
  const std::size_t n = nq + 1;
  std::vector<std::size_t> gen_elems;
  for (std::size_t i = 0; i < nq; ++i) gen_elems.push_back(reps[sub.gen_elems[i]]);
  gen_elems.push_back(z);

  auto express = [tb, reps, qidx, rep, gen_elems, sub, info, p, n, z](std::size_t x) {
    std::vector<int> e = sub.express(qidx[rep[x]]);
    e.push_back(0);
    std::size_t y = info.identity;
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (int s = 0; s < e[i]; ++s) y = tb.at(y, gen_elems[i]);
    std::size_t yx = tb.at(table_inverse(tb, info.identity, y), x);
    int k = 0;
    std::size_t cur = info.identity;
    while (cur != yx) {
      cur = tb.at(cur, z);
      if (++k >= (int)p) throw std::logic_error("table: residue not in the central layer");
    }
    e[n - 1] = k;
    return e;
  };

  PcPresentation pcp(p, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::size_t acc = info.identity;
    for (unsigned long s = 0; s < p; ++s) acc = tb.at(acc, gen_elems[i]);
    pcp.set_power(i, express(acc));
  }
  for (std::size_t j = 1; j + 1 < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      std::size_t a = gen_elems[j], b = gen_elems[i];
      std::size_t c = tb.at(tb.at(table_inverse(tb, info.identity, a),
                                  table_inverse(tb, info.identity, b)),
                            tb.at(a, b));
      pcp.set_comm(j, i, express(c));
    }
  }
  // z is central of order p: trivial power and commutators, already zero

  return BuiltPcp{std::move(pcp), std::move(gen_elems), std::move(express)};
}

}  // namespace detail

/// Rebuilds a consistent pc presentation from an explicit multiplication
/// table via a central composition series.  Verified against the table by a
/// consistency check plus sampled homomorphism and element-order tests.
inline PcPresentation pcp_from_multiplication(const MultTable& tb,
                                              std::uint64_t cap = 10'000) {
  if (tb.size > cap) throw CapExceeded("pcp_from_multiplication: table exceeds cap");
  detail::TableInfo info = detail::validate_table(tb);
  detail::BuiltPcp built = detail::build_pcp_from_table(tb, info);
  const PcPresentation& g = built.pcp;
  if (!check_consistency(g).empty())
    throw std::logic_error("pcp_from_multiplication: inconsistent rebuild");

  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> dist(0, tb.size - 1);
  const int samples = tb.size <= 256 ? 128 : 64;
  for (int s = 0; s < samples; ++s) {
    std::size_t x = dist(rng), y = dist(rng);
    PcElement ex{built.express(x)}, ey{built.express(y)};
    PcElement exy{built.express(tb.at(x, y))};
    if (!(multiply(g, ex, ey) == exy))
      throw std::logic_error("pcp_from_multiplication: homomorphism check failed");
    // element orders must agree
    std::size_t ord = detail::table_order(tb, info.identity, x);
    PcElement acc = g.identity();
    std::size_t pord = 0;
    do {
      acc = multiply(g, acc, ex);
      ++pord;
    } while (!acc.is_identity());
    if (ord != pord) throw std::logic_error("pcp_from_multiplication: element order changed");
  }
  return built.pcp;
}

/// Dense multiplication table of the presented group (normal forms indexed
/// lexicographically, identity first).
inline MultTable multiplication_table(const PcPresentation& g, std::uint64_t cap = 10'000) {
  std::uint64_t m = g.order_u64(cap);
  const int p = (int)g.p();
  std::vector<PcElement> elems;
  elems.reserve(m);
  std::vector<int> e(g.n(), 0);
  do {
    elems.push_back(PcElement{e});
  } while (detail::odometer_next(e, p));

  auto code = [&](const PcElement& x) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < g.n(); ++i) c = c * (std::uint64_t)p + (std::uint64_t)x.exps[i];
    return c;
  };

  MultTable tb;
  tb.size = m;
  tb.t.assign(m * m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      tb.at(i, j) = (std::uint32_t)code(multiply(g, elems[i], elems[j]));
  return tb;
}

// ---------------------------------------------------------------------------
// text format
//
//   prime 3
//   gens 7
//   power 1 = g4^2*g5
//   comm 2 1 = g3
//
// Indices are 1-based, word factors are g<k>^<e> joined by '*', an empty
// right-hand side is the identity, and unlisted relations are trivial.  The
// serializer emits relations in a fixed order and skips trivial ones, so the
// output is canonical regardless of input order.

/// Renders a normal form as a word, e.g. "g1^2*g3"; identity is "1".
inline std::string element_to_word(const PcElement& e) {
  std::string s;
  for (std::size_t i = 0; i < e.exps.size(); ++i) {
    if (!e.exps[i]) continue;
    if (!s.empty()) s += "*";
    s += "g" + std::to_string(i + 1);
    if (e.exps[i] != 1) s += "^" + std::to_string(e.exps[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string pcp_to_text(const PcPresentation& g) {
  std::ostringstream os;
  os << "prime " << g.p() << "\n";
  os << "gens " << g.n() << "\n";
  auto word = [&](const std::vector<int>& w) {
    std::string s;
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (!w[t]) continue;
      if (!s.empty()) s += "*";
      s += "g" + std::to_string(t + 1);
      if (w[t] != 1) s += "^" + std::to_string(w[t]);
    }
    return s;
  };
  for (std::size_t i = 0; i < g.n(); ++i) {
    std::string w = word(g.power_rhs(i));
    if (!w.empty()) os << "power " << (i + 1) << " = " << w << "\n";
  }
  for (std::size_t j = 1; j < g.n(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      std::string w = word(g.comm_rhs(j, i));
      if (!w.empty()) os << "comm " << (j + 1) << " " << (i + 1) << " = " << w << "\n";
    }
  return os.str();
}

struct PcpParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline PcPresentation pcp_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  long prime = -1, gens = -1;
  struct Rel {
    bool is_power;
    std::size_t j, i;
    std::string word;
  };
  std::vector<Rel> rels;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view sv(line);
    auto pos = sv.find('#');
    if (pos != std::string_view::npos) sv = sv.substr(0, pos);
    std::istringstream ls{std::string(sv)};
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& msg) {
      throw PcpParseError("line " + std::to_string(lineno) + ": " + msg);
    };
    if (key == "prime") {
      if (prime != -1) fail("duplicate prime");
      if (!(ls >> prime) || prime < 2) fail("bad prime");
    } else if (key == "gens") {
      if (gens != -1) fail("duplicate gens");
      if (!(ls >> gens) || gens < 0) fail("bad generator count");
    } else if (key == "power" || key == "comm") {
      Rel r;
      r.is_power = key == "power";
      long j = 0, i = 0;
      if (r.is_power) {
        if (!(ls >> j) || j < 1) fail("bad power index");
        r.j = (std::size_t)j;
        r.i = 0;
      } else {
        if (!(ls >> j >> i) || j < 1 || i < 1) fail("bad comm indices");
        r.j = (std::size_t)j;
        r.i = (std::size_t)i;
      }
      std::string eq;
      if (!(ls >> eq) || eq != "=") fail("expected '='");
      std::string rest, tok;
      while (ls >> tok) rest += tok;
      r.word = rest;
      rels.push_back(std::move(r));
    } else {
      fail("unknown keyword '" + key + "'");
    }
  }
  if (prime < 2) throw PcpParseError("missing prime");
  if (gens < 0) throw PcpParseError("missing gens");

  PcPresentation g((unsigned long)prime, (std::size_t)gens);
  auto parse_word = [&](const std::string& s) {
    std::vector<int> w((std::size_t)gens, 0);
    std::size_t pos = 0;
    while (pos < s.size()) {
      if (s[pos] == '*') {
        ++pos;
        continue;
      }
      if (s[pos] != 'g') throw PcpParseError("bad word factor near '" + s.substr(pos) + "'");
      ++pos;
      std::size_t start = pos;
      while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
      if (start == pos) throw PcpParseError("missing generator index in word");
      long idx = std::stol(s.substr(start, pos - start));
      long e = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::size_t es = pos;
        while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
        if (es == pos) throw PcpParseError("missing exponent in word");
        e = std::stol(s.substr(es, pos - es));
      }
      if (idx < 1 || idx > gens) throw PcpParseError("word index out of range");
      if (e < 0 || e >= prime) throw PcpParseError("word exponent out of range");
      w[(std::size_t)idx - 1] = (int)e;
    }
    return w;
  };

  std::vector<bool> seen_pow((std::size_t)gens, false);
  std::vector<std::vector<bool>> seen_comm((std::size_t)gens,
                                           std::vector<bool>((std::size_t)gens, false));
  for (const Rel& r : rels) {
    if (r.is_power) {
      if (r.j > (std::size_t)gens) throw PcpParseError("power index out of range");
      if (seen_pow[r.j - 1]) throw PcpParseError("duplicate power relation");
      seen_pow[r.j - 1] = true;
      g.set_power(r.j - 1, parse_word(r.word));
    } else {
      if (r.j > (std::size_t)gens || r.i > (std::size_t)gens || r.j <= r.i)
        throw PcpParseError("comm indices out of range (need j > i)");
      if (seen_comm[r.j - 1][r.i - 1]) throw PcpParseError("duplicate comm relation");
      seen_comm[r.j - 1][r.i - 1] = true;
      g.set_comm(r.j - 1, r.i - 1, parse_word(r.word));
    }
  }
  return g;
}

}  // namespace schur

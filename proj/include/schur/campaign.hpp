#pragma once

// The verification campaign behind `verify-paper`: a fixed battery of
// cross-checks over the group catalog (multiplier values, bound attainment,
// the improved class>=3 bound, oracle equivalence, divisibility and
// inequality relations, and the property suites).  Checks are independent
// jobs dispatched to a worker pool; output order is canonical (sorted by
// check id) regardless of completion order.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "schur/bounds.hpp"
#include "schur/catalog.hpp"
#include "schur/multiplier.hpp"
#include "schur/reporting.hpp"
#include "schur/version.hpp"

namespace schur {

struct CampaignOptions {
  std::vector<unsigned long> primes = {3, 5, 7, 11, 13, 17};
  std::uint64_t oracle_cap = 32;
  unsigned threads = 0;  // 0 = SCHUR_THREADS env var, else hardware
};

enum class Verdict { pass, fail, alarm };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::alarm: return "alarm";
  }
  return "?";
}

struct CheckResult {
  std::string id;
  std::string statement;
  std::string inputs;
  std::string expected;
  std::string computed;
  Verdict verdict = Verdict::fail;
};

struct VerificationReport {
  std::string version = kVersion;
  CampaignOptions options;
  std::vector<CheckResult> checks;  // sorted by id
  std::vector<double> runtimes_ms;  // parallel to checks
  double total_ms = 0;
  std::size_t passed = 0, failed = 0, alarmed = 0;
};

namespace detail {

struct Check {
  std::string id;
  std::string statement;
  std::string inputs;
  // fills expected/computed/verdict
  std::function<void(CheckResult&)> run;
};

inline bool has_prime(const CampaignOptions& o, unsigned long p) {
  return std::find(o.primes.begin(), o.primes.end(), p) != o.primes.end();
}

inline std::string exp_str(unsigned long p, std::size_t e) {
  return std::to_string(p) + "^" + std::to_string(e);
}

inline void expect_eq(CheckResult& r, const std::string& expected, const std::string& computed) {
  r.expected = expected;
  r.computed = computed;
  r.verdict = expected == computed ? Verdict::pass : Verdict::fail;
}

inline void expect_true(CheckResult& r, const std::string& what, bool ok) {
  r.expected = what;
  r.computed = ok ? what : "violated";
  r.verdict = ok ? Verdict::pass : Verdict::fail;
}

// multiplier invariants must equal Z_p x Z_p x Z_p
inline void check_rank3_multiplier(CheckResult& r, const std::string& spec) {
  PcPresentation g = build_group(spec);
  AbelianInvariants m = schur_multiplier(g).multiplier;
  AbelianInvariants want;
  want.torsion.assign(3, Int((long)g.p()));
  expect_eq(r, want.str(), m.str());
}

inline std::vector<Int> kxk_minor_gcds_brute(const IntMatrix& m);

}  // namespace detail

/// Deterministic small random matrix for the property checks.
inline IntMatrix random_small_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> dist(-9, 9);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = dist(rng);
  return m;
}

namespace detail {

// gcd of all k x k minors, for every k, by brute-force enumeration; the
// independent oracle for the Smith-form property d1...dk = gcd of k-minors
inline std::vector<Int> kxk_minor_gcds_brute(const IntMatrix& m) {
  const std::size_t R = m.rows, C = m.cols;
  const std::size_t kmax = std::min(R, C);
  std::vector<Int> out;

  std::function<Int(std::vector<std::size_t>&, std::vector<std::size_t>&)> det =
      [&](std::vector<std::size_t>& ri, std::vector<std::size_t>& ci) -> Int {
    const std::size_t k = ri.size();
    if (k == 1) return m.at(ri[0], ci[0]);
    Int acc = 0;
    std::vector<std::size_t> subr(ri.begin() + 1, ri.end());
    for (std::size_t c = 0; c < k; ++c) {
      std::vector<std::size_t> subc;
      for (std::size_t t = 0; t < k; ++t)
        if (t != c) subc.push_back(ci[t]);
      Int minor = det(subr, subc);
      Int term = m.at(ri[0], ci[c]) * minor;
      if (c % 2 == 0)
        acc += term;
      else
        acc -= term;
    }
    return acc;
  };

  for (std::size_t k = 1; k <= kmax; ++k) {
    Int g = 0;
    std::vector<bool> rsel(R, false), csel(C, false);
    std::fill(rsel.begin(), rsel.begin() + (long)k, true);
    std::sort(rsel.begin(), rsel.end());
    // iterate over all row subsets of size k (std::prev_permutation on the
    // sorted mask gives each combination once)
    std::vector<bool> rmask(R, false);
    std::fill(rmask.begin(), rmask.begin() + (long)k, true);
    std::sort(rmask.begin(), rmask.end(), std::greater<bool>());
    do {
      std::vector<std::size_t> ri;
      for (std::size_t i = 0; i < R; ++i)
        if (rmask[i]) ri.push_back(i);
      std::vector<bool> cmask(C, false);
      std::fill(cmask.begin(), cmask.begin() + (long)k, true);
      std::sort(cmask.begin(), cmask.end(), std::greater<bool>());
      do {
        std::vector<std::size_t> ci;
        for (std::size_t j = 0; j < C; ++j)
          if (cmask[j]) ci.push_back(j);
        Int d = det(ri, ci);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      } while (std::prev_permutation(cmask.begin(), cmask.end()));
    } while (std::prev_permutation(rmask.begin(), rmask.end()));
    out.push_back(g);
  }
  return out;
}

inline std::vector<Check> build_checks(const CampaignOptions& opt) {
  std::vector<Check> checks;
  auto add = [&](std::string id, std::string statement, std::string inputs,
                 std::function<void(CheckResult&)> run) {
    checks.push_back({std::move(id), std::move(statement), std::move(inputs), std::move(run)});
  };

  // --- multiplier orders of the headline groups -----------------------------
  if (has_prime(opt, 3))
    add("c01.multiplier.h37", "multiplier of the order-3^7 catalog group has order 3^10", "h37",
        [](CheckResult& r) {
          auto m = schur_multiplier(build_group("h37")).multiplier;
          expect_eq(r, "3^10", exp_str(3, m.log_order(3)));
        });

  for (unsigned long p : {5ul, 7ul, 11ul, 13ul, 17ul}) {
    if (!has_prime(opt, p)) continue;
    std::string s1 = "example1@" + std::to_string(p);
    add("c02.multiplier.example1.p" + std::to_string(p),
        "multiplier of the class-3 order-p^5 example is Zp x Zp x Zp", s1,
        [s1](CheckResult& r) { check_rank3_multiplier(r, s1); });
    std::string s2 = "example2@" + std::to_string(p);
    add("c03.multiplier.example2.p" + std::to_string(p),
        "multiplier of the maximal-class order-p^5 example is Zp x Zp x Zp", s2,
        [s2](CheckResult& r) { check_rank3_multiplier(r, s2); });
  }

  // --- bound attainment for the class-2 families -----------------------------
  for (unsigned long p : {3ul, 5ul, 7ul}) {
    if (!has_prime(opt, p)) continue;
    std::vector<std::pair<std::string, std::string>> specs = {
        {"g1.n3", "g1@" + std::to_string(p) + ",n=3"},
        {"g1.n4", "g1@" + std::to_string(p) + ",n=4"},
        {"g1.n5", "g1@" + std::to_string(p) + ",n=5"},
        {"g2", "g2@" + std::to_string(p)},
        {"g3", "g3@" + std::to_string(p)},
    };
    for (auto& [tag, spec] : specs)
      add("c04.attains." + tag + ".p" + std::to_string(p),
          "log_p|M| equals the (n+k-2)(n-k-1)/2+1 bound exponent", spec,
          [spec](CheckResult& r) {
            GroupReport rep = analyze(build_group(spec));
            long long want = niroomand_exponent((long long)rep.n, (long long)rep.k);
            expect_eq(r, "p^" + std::to_string(want), "p^" + std::to_string(rep.mult_exp));
          });
  }

  // --- improved bound for class >= 3 -----------------------------------------
  for (unsigned long p : {5ul, 7ul, 11ul, 13ul, 17ul}) {
    if (!has_prime(opt, p)) continue;
    for (const char* fam : {"example1", "example2"}) {
      std::string spec = std::string(fam) + "@" + std::to_string(p);
      add("c05.improved-bound." + std::string(fam) + ".p" + std::to_string(p),
          "class >= 3 at p != 3 stays within the improved exponent (n+k-2)(n-k-1)/2", spec,
          [spec](CheckResult& r) {
            PcPresentation g = build_group(spec);
            auto series = lower_central_series(g);
            std::size_t k = series[1].log_order();
            std::size_t e = schur_multiplier(g).multiplier.log_order(g.p());
            long long cap = niroomand_exponent((long long)g.n(), (long long)k) - 1;
            expect_true(r, "log_p|M| <= " + std::to_string(cap), (long long)e <= cap);
          });
    }
  }
  if (has_prime(opt, 3))
    add("c05.exceeds-by-one.h37",
        "the order-3^7 group exceeds the improved class>=3 exponent by exactly one", "h37",
        [](CheckResult& r) {
          PcPresentation g = build_group("h37");
          std::size_t e = schur_multiplier(g).multiplier.log_order(3);
          expect_eq(r, "9+1", std::to_string(niroomand_exponent(7, 4) - 1) + "+" +
                                  std::to_string((long long)e - (niroomand_exponent(7, 4) - 1)));
        });

  // --- oracle equivalence -----------------------------------------------------
  {
    std::vector<std::pair<std::string, std::string>> fixtures = {
        {"z2xz2", "elemab@2,rank=2"}, {"z4", "cyclic@2,a=2"}, {"z2cubed", "elemab@2,rank=3"},
        {"d8", "d8"},                 {"q8", "q8"},           {"z3xz3", "elemab@3,rank=2"},
    };
    if (opt.oracle_cap >= 81) {
      fixtures.emplace_back("es27", "es@3");
      fixtures.emplace_back("z3cubed", "elemab@3,rank=3");
    }
    for (auto& [tag, spec] : fixtures) {
      std::uint64_t cap = opt.oracle_cap;
      add("c06.oracle." + tag,
          "bar-resolution H2 equals the tails multiplier exactly", spec,
          [spec, cap](CheckResult& r) {
            PcPresentation g = build_group(spec);
            AbelianInvariants h2 = h2_bar_oracle(multiplication_table(g), cap);
            AbelianInvariants tails = schur_multiplier(g).multiplier;
            expect_eq(r, tails.str(), h2.str());
          });
    }
  }

  // --- free-rank law ----------------------------------------------------------
  {
    std::vector<std::string> specs = {"d8", "q8", "cyclic@2,a=2", "elemab@2,rank=3"};
    for (unsigned long p : {3ul, 5ul, 7ul})
      if (has_prime(opt, p)) {
        specs.push_back("es@" + std::to_string(p));
        specs.push_back("g1@" + std::to_string(p) + ",n=4");
        specs.push_back("g2@" + std::to_string(p));
        specs.push_back("g3@" + std::to_string(p));
        specs.push_back("elemab@" + std::to_string(p) + ",rank=2");
      }
    if (has_prime(opt, 3)) specs.push_back("h37");
    for (unsigned long p : {5ul, 7ul, 11ul, 13ul, 17ul})
      if (has_prime(opt, p)) {
        specs.push_back("example1@" + std::to_string(p));
        specs.push_back("example2@" + std::to_string(p));
      }
    for (const std::string& spec : specs)
      add("c07.free-rank." + spec, "tail quotient free rank equals d(G)", spec,
          [spec](CheckResult& r) {
            PcPresentation g = build_group(spec);
            auto res = schur_multiplier(g);  // throws on violation
            expect_eq(r, "d=" + std::to_string(abelianization(g).second),
                      "d=" + std::to_string(res.free_rank_check));
          });
  }

  // --- divisibility across central quotients ----------------------------------
  for (unsigned long p : {3ul, 5ul, 7ul}) {
    if (!has_prime(opt, p)) continue;
    std::vector<std::string> specs = {"g1@" + std::to_string(p) + ",n=4",
                                      "g2@" + std::to_string(p), "g3@" + std::to_string(p)};
    if (p >= 5) {
      specs.push_back("example1@" + std::to_string(p));
      specs.push_back("example2@" + std::to_string(p));
    }
    if (p == 3) specs.push_back("h37");
    for (const std::string& spec : specs)
      add("c08.jones." + spec,
          "|M(G)||G'^K| divides |M(G/K)||M(K)||(G/K)^ab(x)K| for every central order-p K", spec,
          [spec](CheckResult& r) {
            ScanResult scan = quotient_scan(build_group(spec));
            bool all = true;
            for (const auto& q : scan.quotients) all = all && q.jones_ok;
            expect_true(r, "divisibility holds for all " +
                               std::to_string(scan.quotients.size()) + " quotients",
                        all);
          });
  }

  // --- class-3 inequality and psi images --------------------------------------
  {
    std::vector<std::string> ellis_specs;
    for (unsigned long p : {5ul, 7ul})
      if (has_prime(opt, p)) ellis_specs.push_back("example1@" + std::to_string(p));
    if (has_prime(opt, 3)) ellis_specs.push_back("h37");
    for (const std::string& spec : ellis_specs)
      add("c09.ellis." + spec,
          "|M||gamma2||Im psi2||Im psi3| <= |M(G^ab)||gamma2/gamma3 (x) Gbar||gamma3 (x) Gbar|",
          spec, [spec](CheckResult& r) {
            PsiImageReport rep = ellis_inequality_check(build_group(spec));
            expect_true(r,
                        "p^" + std::to_string(rep.lhs_exp) + " <= p^" + std::to_string(rep.rhs_exp),
                        rep.holds);
          });
    if (has_prime(opt, 3))
      add("c09.psi3-trivial.h37", "psi3 image of the order-3^7 group is trivial", "h37",
          [](CheckResult& r) {
            expect_eq(r, "dim 0", "dim " + std::to_string(psi3_image(build_group("h37"))));
          });
    for (unsigned long p : {5ul, 7ul})
      if (has_prime(opt, p)) {
        std::string spec = "example1@" + std::to_string(p);
        add("c09.psi2-trivial." + spec, "psi2 vanishes when Gbar^ab is 2-generated", spec,
            [spec](CheckResult& r) {
              expect_eq(r, "dim 0", "dim " + std::to_string(psi2_image(build_group(spec))));
            });
      }
  }

  // --- necessary conditions ----------------------------------------------------
  for (unsigned long p : {3ul, 5ul, 7ul}) {
    if (!has_prime(opt, p)) continue;
    for (const char* fam : {"g2", "g3"}) {
      std::string spec = std::string(fam) + "@" + std::to_string(p);
      add("c10.necessary." + spec,
          "G^ab elementary, Z(G) elementary, Z(G) inside G'", spec, [spec](CheckResult& r) {
            Lemma31Flags f = necessary_conditions(build_group(spec));
            expect_true(r, "(i) and (ii) and (iii)",
                        f.gab_elementary && f.center_elementary && f.center_in_derived);
          });
    }
    std::string g1spec = "g1@" + std::to_string(p) + ",n=4";
    add("c10.exemption." + g1spec,
        "the extraspecial-times-elementary family satisfies (i),(ii) and is exempt from (iii)",
        g1spec, [g1spec](CheckResult& r) {
          Lemma31Flags f = necessary_conditions(build_group(g1spec));
          expect_true(r, "(i), (ii), not (iii), exemption flagged",
                      f.gab_elementary && f.center_elementary && !f.center_in_derived &&
                          f.exempt_es_product);
        });
  }
  if (has_prime(opt, 3))
    add("c10.necessary.h37", "G^ab elementary, Z(G) elementary, Z(G) inside G'", "h37",
        [](CheckResult& r) {
          Lemma31Flags f = necessary_conditions(build_group("h37"));
          expect_true(r, "(i) and (ii) and (iii)",
                      f.gab_elementary && f.center_elementary && f.center_in_derived);
        });

  // --- quotient attainment propagation ------------------------------------------
  if (has_prime(opt, 3))
    for (const char* spec : {"g2@3", "g3@3", "h37"})
      add(std::string("c11.quotient-attains.") + spec,
          "every central order-p quotient of a bound-attaining group attains the bound", spec,
          [spec = std::string(spec)](CheckResult& r) {
            ScanResult scan = quotient_scan(build_group(spec));
            bool all = !scan.quotients.empty();
            for (const auto& q : scan.quotients) all = all && q.attains;
            expect_true(r, "all " + std::to_string(scan.quotients.size()) + " quotients attain",
                        all);
          });

  // --- maximal class bound --------------------------------------------------------
  if (has_prime(opt, 5))
    add("c12.maximal-class.example2.p5",
        "a maximal-class group of order p^5 has log_p|M| <= n-2", "example2@5",
        [](CheckResult& r) {
          PcPresentation g = build_group("example2@5");
          std::size_t e = schur_multiplier(g).multiplier.log_order(5);
          std::size_t c = nilpotency_class(g);
          expect_true(r, "class = 4 (maximal) and log|M| = 3 <= 3", c == 4 && e == 3);
        });
  for (unsigned long p : {5ul, 7ul}) {
    if (!has_prime(opt, p)) continue;
    std::string spec = "example2@" + std::to_string(p);
    add("c12.maximal-class-scan." + spec,
        "maximal-class quotients in the scan respect |M| <= p^{n-2}", spec,
        [spec](CheckResult& r) {
          ScanResult scan = quotient_scan(build_group(spec));
          bool ok = scan.maximal_class_ok;
          for (const auto& q : scan.quotients) ok = ok && q.maximal_class_ok;
          expect_true(r, "bound respected in all records", ok);
        });
  }

  // --- property suites --------------------------------------------------------------
  add("c13.props.snf-minor-gcd",
      "d1...dk equals the gcd of all k x k minors on random small matrices", "seeded rng",
      [](CheckResult& r) {
        std::mt19937 rng(20240311);
        bool ok = true;
        for (int trial = 0; trial < 12 && ok; ++trial) {
          std::size_t sz = trial < 8 ? 3 : 4;
          IntMatrix m = random_small_matrix(rng, sz, sz);
          auto snf = smith_normal_form(m);
          auto gcds = kxk_minor_gcds_brute(m);
          Int prod = 1;
          for (std::size_t k = 0; k < gcds.size(); ++k) {
            if (k < snf.rank) {
              prod *= snf.diag[k];
              ok = ok && gcds[k] == prod;
            } else {
              ok = ok && sgn(gcds[k]) == 0;
            }
          }
        }
        expect_true(r, "minor gcd law on 12 matrices", ok);
      });

  {
    std::vector<std::string> specs = {"d8", "q8"};
    for (unsigned long p : {3ul, 5ul, 7ul})
      if (has_prime(opt, p)) {
        specs.push_back("es@" + std::to_string(p));
        specs.push_back("g2@" + std::to_string(p));
        specs.push_back("g3@" + std::to_string(p));
        specs.push_back("g1@" + std::to_string(p) + ",n=5");
      }
    if (has_prime(opt, 3)) specs.push_back("h37");
    for (unsigned long p : {5ul, 7ul, 11ul, 13ul, 17ul})
      if (has_prime(opt, p)) {
        specs.push_back("example1@" + std::to_string(p));
        specs.push_back("example2@" + std::to_string(p));
      }
    for (const std::string& spec : specs) {
      add("c13.props.assoc." + spec, "multiplication is associative on random triples", spec,
          [spec](CheckResult& r) {
            PcPresentation g = build_group(spec);
            std::mt19937 rng(42);
            std::uniform_int_distribution<int> dist(0, (int)g.p() - 1);
            bool ok = true;
            for (int t = 0; t < 24 && ok; ++t) {
              PcElement a = g.identity(), b = g.identity(), c = g.identity();
              for (std::size_t i = 0; i < g.n(); ++i) {
                a.exps[i] = dist(rng);
                b.exps[i] = dist(rng);
                c.exps[i] = dist(rng);
              }
              ok = multiply(g, multiply(g, a, b), c) == multiply(g, a, multiply(g, b, c));
            }
            expect_true(r, "24 random triples associate", ok);
          });
      add("c13.props.consistency." + spec, "catalog presentation passes all overlap checks", spec,
          [spec](CheckResult& r) {
            expect_true(r, "no violations", check_consistency(build_group(spec)).empty());
          });
    }
  }

  {
    std::vector<std::pair<std::string, std::string>> pairs = {{"d8", "elemab@2,rank=1"},
                                                              {"cyclic@2,a=2", "elemab@2,rank=2"}};
    for (unsigned long p : {3ul, 5ul})
      if (has_prime(opt, p)) {
        std::string ps = std::to_string(p);
        pairs.emplace_back("es@" + ps, "elemab@" + ps + ",rank=1");
        pairs.emplace_back("es@" + ps, "es@" + ps);
        pairs.emplace_back("g2@" + ps, "elemab@" + ps + ",rank=1");
      }
    for (auto& [a, b] : pairs)
      add("c13.props.kunneth." + a + "_x_" + b,
          "|M(AxB)| = |M(A)| |M(B)| |A^ab (x) B^ab|", a + " x " + b,
          [a = a, b = b](CheckResult& r) {
            PcPresentation ga = build_group(a), gb = build_group(b);
            PcPresentation prod = direct_product(ga, gb);
            unsigned long p = ga.p();
            std::size_t lhs = schur_multiplier(prod).multiplier.log_order(p);
            std::size_t rhs = schur_multiplier(ga).multiplier.log_order(p) +
                              schur_multiplier(gb).multiplier.log_order(p) +
                              abelian_tensor(abelianization(ga).first, abelianization(gb).first)
                                  .log_order(p);
            expect_eq(r, "p^" + std::to_string(rhs), "p^" + std::to_string(lhs));
          });
  }

  return checks;
}

}  // namespace detail

inline unsigned resolve_thread_count(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("SCHUR_THREADS")) {
    long v = std::atol(env);
    if (v > 0) return (unsigned)v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

inline VerificationReport run_verification_campaign(const CampaignOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  auto checks = detail::build_checks(opt);
  std::sort(checks.begin(), checks.end(),
            [](const detail::Check& a, const detail::Check& b) { return a.id < b.id; });

  VerificationReport rep;
  rep.options = opt;
  rep.checks.resize(checks.size());
  rep.runtimes_ms.assign(checks.size(), 0.0);

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= checks.size()) return;
      CheckResult& r = rep.checks[i];
      r.id = checks[i].id;
      r.statement = checks[i].statement;
      r.inputs = checks[i].inputs;
      auto s = std::chrono::steady_clock::now();
      try {
        checks[i].run(r);
      } catch (const std::exception& e) {
        r.computed = std::string("exception: ") + e.what();
        if (r.expected.empty()) r.expected = "no exception";
        r.verdict = Verdict::fail;
      }
      rep.runtimes_ms[i] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - s).count();
    }
  };

  unsigned nthreads = resolve_thread_count(opt.threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (const CheckResult& r : rep.checks) {
    if (r.verdict == Verdict::pass) ++rep.passed;
    else if (r.verdict == Verdict::fail) ++rep.failed;
    else ++rep.alarmed;
  }
  rep.total_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// Campaign JSON: checks carry no timing so two runs with the same options
/// are byte-identical; wall-clock data lives in the separate "timing" block.
inline njson verification_report_to_json(const VerificationReport& rep,
                                         bool include_timing = true) {
  njson j;
  j["version"] = rep.version;
  njson primes = njson::array();
  for (unsigned long p : rep.options.primes) primes.push_back(p);
  j["options"] = {{"primes", primes}, {"oracle_cap", rep.options.oracle_cap}};
  njson checks = njson::array();
  for (const CheckResult& r : rep.checks)
    checks.push_back({{"id", r.id},
                      {"statement", r.statement},
                      {"inputs", r.inputs},
                      {"expected", r.expected},
                      {"computed", r.computed},
                      {"verdict", verdict_name(r.verdict)}});
  j["checks"] = checks;
  j["summary"] = {{"pass", rep.passed}, {"fail", rep.failed}, {"alarm", rep.alarmed}};
  if (include_timing) {
    njson times = njson::object();
    for (std::size_t i = 0; i < rep.checks.size(); ++i)
      times[rep.checks[i].id] = rep.runtimes_ms[i];
    j["timing"] = {{"total_ms", rep.total_ms}, {"per_check_ms", times}};
  }
  return j;
}

}  // namespace schur

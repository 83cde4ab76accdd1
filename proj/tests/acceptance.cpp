// Acceptance suite: one check per release criterion, one pass/fail line
// each.  All equality checks are exact integer comparisons.  The binary
// exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "schur/bounds.hpp"
#include "schur/campaign.hpp"
#include "schur/catalog.hpp"
#include "schur/multiplier.hpp"
#include "schur/pcgroup.hpp"

using namespace schur;

namespace {

int failures = 0;

void criterion(const std::string& name, const std::function<void()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string error;
  try {
    body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (error.empty()) {
    std::printf("[PASS] %s (%.2fs)\n", name.c_str(), secs);
  } else {
    std::printf("[FAIL] %s (%.2fs): %s\n", name.c_str(), secs, error.c_str());
    ++failures;
  }
  std::fflush(stdout);
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

AbelianInvariants elem_rank(unsigned long p, std::size_t r) {
  AbelianInvariants a;
  a.torsion.assign(r, Int((long)p));
  return a;
}

const std::vector<unsigned long> kLargePrimes = {5, 7, 11, 13, 17};

}  // namespace

int main() {
  criterion("1. multiplier of h37 has order 3^10", [] {
    auto m = schur_multiplier(build_group("h37")).multiplier;
    require(m.log_order(3) == 10, "expected 3^10, got 3^" + std::to_string(m.log_order(3)));
  });

  criterion("2. M(example1(p)) = Zp^3 for p in {5,7,11,13,17}", [] {
    for (unsigned long p : kLargePrimes) {
      auto m = schur_multiplier(build_group("example1@" + std::to_string(p))).multiplier;
      require(m == elem_rank(p, 3), "mismatch at p=" + std::to_string(p) + ": " + m.str());
    }
  });

  criterion("3. M(example2(p)) = Zp^3 for p in {5,7,11,13,17}", [] {
    for (unsigned long p : kLargePrimes) {
      auto m = schur_multiplier(build_group("example2@" + std::to_string(p))).multiplier;
      require(m == elem_rank(p, 3), "mismatch at p=" + std::to_string(p) + ": " + m.str());
    }
  });

  criterion("4. bound attainment: g1(n=3,4,5), g2, g3 at p in {3,5,7}", [] {
    for (unsigned long p : {3ul, 5ul, 7ul}) {
      std::string ps = std::to_string(p);
      for (std::size_t n : {3ul, 4ul, 5ul}) {
        PcPresentation g = build_group("g1@" + ps + ",n=" + std::to_string(n));
        std::size_t e = schur_multiplier(g).multiplier.log_order(p);
        std::size_t want = (n - 1) * (n - 2) / 2 + 1;
        require(e == want, "g1@" + ps + ",n=" + std::to_string(n) + ": 3^" + std::to_string(e));
        require((long long)want == niroomand_exponent((long long)n, 1), "formula mismatch");
      }
      std::size_t e2 = schur_multiplier(build_group("g2@" + ps)).multiplier.log_order(p);
      require(e2 == 6 && niroomand_exponent(5, 2) == 6, "g2@" + ps + ": p^" + std::to_string(e2));
      std::size_t e3 = schur_multiplier(build_group("g3@" + ps)).multiplier.log_order(p);
      require(e3 == 8 && niroomand_exponent(6, 3) == 8, "g3@" + ps + ": p^" + std::to_string(e3));
    }
  });

  criterion("5. class >= 3 improved bound at p in {5..17}; h37 exceeds it by exactly 1", [] {
    for (unsigned long p : kLargePrimes)
      for (const char* fam : {"example1", "example2"}) {
        std::string spec = std::string(fam) + "@" + std::to_string(p);
        PcPresentation g = build_group(spec);
        auto series = lower_central_series(g);
        require(series.size() - 1 >= 3, spec + " should have class >= 3");
        long long cap =
            niroomand_exponent((long long)g.n(), (long long)series[1].log_order()) - 1;
        std::size_t e = schur_multiplier(g).multiplier.log_order(p);
        require((long long)e <= cap, spec + " exceeds improved bound");
      }
    PcPresentation h = build_group("h37");
    std::size_t eh = schur_multiplier(h).multiplier.log_order(3);
    require((long long)eh == niroomand_exponent(7, 4) - 1 + 1, "h37 must exceed by exactly 1");
  });

  criterion("6. oracle equivalence at cap 32, plus order-27 groups at cap 81", [] {
    for (const char* spec :
         {"elemab@2,rank=2", "cyclic@2,a=2", "elemab@2,rank=3", "d8", "q8", "elemab@3,rank=2"}) {
      PcPresentation g = build_group(spec);
      AbelianInvariants tails = schur_multiplier(g).multiplier;
      AbelianInvariants h2 = h2_bar_oracle(multiplication_table(g), 32);
      require(tails == h2, std::string(spec) + ": tails " + tails.str() + " vs H2 " + h2.str());
    }
    for (const char* spec : {"es@3", "elemab@3,rank=3"}) {
      PcPresentation g = build_group(spec);
      AbelianInvariants tails = schur_multiplier(g).multiplier;
      AbelianInvariants h2 = h2_bar_oracle(multiplication_table(g, 81), 81);
      require(tails == h2, std::string(spec) + ": tails " + tails.str() + " vs H2 " + h2.str());
    }
  });

  criterion("7. free-rank law across the campaign set", [] {
    std::vector<std::string> specs = {"d8", "q8", "cyclic@2,a=2", "elemab@2,rank=3", "h37"};
    for (unsigned long p : {3ul, 5ul, 7ul}) {
      std::string ps = std::to_string(p);
      specs.push_back("es@" + ps);
      specs.push_back("g1@" + ps + ",n=4");
      specs.push_back("g2@" + ps);
      specs.push_back("g3@" + ps);
    }
    for (unsigned long p : kLargePrimes) {
      specs.push_back("example1@" + std::to_string(p));
      specs.push_back("example2@" + std::to_string(p));
    }
    for (const std::string& spec : specs) {
      PcPresentation g = build_group(spec);
      auto res = schur_multiplier(g);  // free-rank mismatch throws by itself
      require(res.free_rank_check == abelianization(g).second, spec + ": free rank law");
    }
  });

  criterion("8. divisibility law over all scans of g1,g2,g3,h37,example1,example2 at {3,5,7}", [] {
    std::vector<std::string> specs;
    for (unsigned long p : {3ul, 5ul, 7ul}) {
      std::string ps = std::to_string(p);
      specs.push_back("g1@" + ps + ",n=4");
      specs.push_back("g2@" + ps);
      specs.push_back("g3@" + ps);
      if (p >= 5) {
        specs.push_back("example1@" + ps);
        specs.push_back("example2@" + ps);
      }
    }
    specs.push_back("h37");
    for (const std::string& spec : specs) {
      ScanResult scan = quotient_scan(build_group(spec));
      require(!scan.quotients.empty(), spec + ": expected central order-p subgroups");
      for (std::size_t i = 0; i < scan.quotients.size(); ++i)
        require(scan.quotients[i].jones_ok,
                spec + ": divisibility fails at K" + std::to_string(i + 1));
    }
  });

  criterion("9. class-3 inequality; psi3(h37) = 0; psi2(example1) = 0", [] {
    for (const char* spec : {"example1@5", "example1@7", "h37"}) {
      PsiImageReport r = ellis_inequality_check(build_group(spec));
      require(r.holds, std::string(spec) + ": inequality fails (" + std::to_string(r.lhs_exp) +
                           " > " + std::to_string(r.rhs_exp) + ")");
    }
    require(psi3_image(build_group("h37")) == 0, "psi3(h37) must vanish");
    require(psi2_image(build_group("example1@5")) == 0, "psi2(example1@5) must vanish");
    require(psi2_image(build_group("example1@7")) == 0, "psi2(example1@7) must vanish");
  });

  criterion("10. necessary conditions: g2, g3, h37 all three; g1 exempt from (iii)", [] {
    for (unsigned long p : {3ul, 5ul, 7ul}) {
      std::string ps = std::to_string(p);
      for (std::string fam : {std::string("g2@") + ps, std::string("g3@") + ps}) {
        Lemma31Flags f = necessary_conditions(build_group(fam));
        require(f.gab_elementary && f.center_elementary && f.center_in_derived,
                fam + ": all three conditions expected");
      }
      Lemma31Flags f1 = necessary_conditions(build_group("g1@" + ps + ",n=4"));
      require(f1.gab_elementary && f1.center_elementary && !f1.center_in_derived &&
                  f1.exempt_es_product,
              "g1@" + ps + ": (i),(ii) plus exemption expected");
    }
    Lemma31Flags fh = necessary_conditions(build_group("h37"));
    require(fh.gab_elementary && fh.center_elementary && fh.center_in_derived,
            "h37: all three conditions expected");
  });

  criterion("11. every central order-p quotient of g2(3), g3(3), h37 attains the bound", [] {
    for (const char* spec : {"g2@3", "g3@3", "h37"}) {
      ScanResult scan = quotient_scan(build_group(spec));
      require(!scan.quotients.empty(), std::string(spec) + ": no quotients");
      for (std::size_t i = 0; i < scan.quotients.size(); ++i)
        require(scan.quotients[i].attains,
                std::string(spec) + ": K" + std::to_string(i + 1) + " does not attain");
    }
  });

  criterion("12. maximal class: example2(5) has log|M| = 3 <= n-2; scans stay within p^{n-2}", [] {
    PcPresentation g = build_group("example2@5");
    require(nilpotency_class(g) == 4, "example2@5 should have maximal class");
    std::size_t e = schur_multiplier(g).multiplier.log_order(5);
    require(e == 3 && e <= 3, "log|M| = " + std::to_string(e));
    for (const char* spec : {"example2@5", "example2@7"}) {
      ScanResult scan = quotient_scan(build_group(spec));
      require(scan.maximal_class_ok, std::string(spec) + ": group-level bound violated");
      for (const auto& q : scan.quotients)
        require(q.maximal_class_ok, std::string(spec) + ": quotient bound violated");
    }
  });

  criterion("13a. property suite: smith diagonal versus brute-force minor gcds", [] {
    std::mt19937 rng(20240311);
    for (int trial = 0; trial < 12; ++trial) {
      std::size_t sz = trial < 8 ? 3 : 4;
      IntMatrix m = random_small_matrix(rng, sz, sz);
      auto snf = smith_normal_form(m);
      auto gcds = detail::kxk_minor_gcds_brute(m);
      Int prod = 1;
      for (std::size_t k = 0; k < gcds.size(); ++k) {
        if (k < snf.rank) {
          prod *= snf.diag[k];
          require(gcds[k] == prod, "minor gcd law violated");
        } else {
          require(sgn(gcds[k]) == 0, "rank disagrees with vanishing minors");
        }
      }
    }
  });

  criterion("13b. property suite: associativity and consistency across the catalog", [] {
    std::vector<std::string> specs = {"d8", "q8", "cyclic@2,a=3", "h37"};
    for (unsigned long p : {3ul, 5ul, 7ul}) {
      std::string ps = std::to_string(p);
      specs.push_back("es@" + ps);
      specs.push_back("g1@" + ps + ",n=5");
      specs.push_back("g2@" + ps);
      specs.push_back("g3@" + ps);
    }
    for (unsigned long p : kLargePrimes) {
      specs.push_back("example1@" + std::to_string(p));
      specs.push_back("example2@" + std::to_string(p));
    }
    for (const std::string& spec : specs) {
      PcPresentation g = build_group(spec);
      require(check_consistency(g).empty(), spec + ": inconsistent presentation");
      std::mt19937 rng(4242);
      std::uniform_int_distribution<int> dist(0, (int)g.p() - 1);
      for (int t = 0; t < 20; ++t) {
        PcElement a = g.identity(), b = g.identity(), c = g.identity();
        for (std::size_t i = 0; i < g.n(); ++i) {
          a.exps[i] = dist(rng);
          b.exps[i] = dist(rng);
          c.exps[i] = dist(rng);
        }
        require(multiply(g, multiply(g, a, b), c) == multiply(g, a, multiply(g, b, c)),
                spec + ": associativity failure");
      }
    }
  });

  criterion("13c. property suite: product law |M(AxB)| = |M(A)||M(B)||A^ab (x) B^ab|", [] {
    std::vector<std::pair<std::string, std::string>> pairs = {
        {"d8", "elemab@2,rank=1"},    {"cyclic@2,a=2", "elemab@2,rank=2"},
        {"es@3", "elemab@3,rank=1"},  {"es@3", "es@3"},
        {"es@5", "elemab@5,rank=2"},  {"g2@3", "elemab@3,rank=1"},
    };
    for (const auto& [a, b] : pairs) {
      PcPresentation ga = build_group(a), gb = build_group(b);
      unsigned long p = ga.p();
      std::size_t lhs = schur_multiplier(direct_product(ga, gb)).multiplier.log_order(p);
      std::size_t rhs =
          schur_multiplier(ga).multiplier.log_order(p) +
          schur_multiplier(gb).multiplier.log_order(p) +
          abelian_tensor(abelianization(ga).first, abelianization(gb).first).log_order(p);
      require(lhs == rhs, a + " x " + b + ": " + std::to_string(lhs) + " != " +
                              std::to_string(rhs));
    }
  });

  std::printf("acceptance: %d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}

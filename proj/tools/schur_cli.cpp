// Command-line surface: single-group reports, the verification campaign,
// central quotient scans, the homology oracle, and the bound calculator.
//
// Exit codes: 0 success, 1 campaign check failures, 2 usage/parse errors,
// 3 computation errors, 4 resource cap exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "schur/bounds.hpp"
#include "schur/campaign.hpp"
#include "schur/catalog.hpp"
#include "schur/multiplier.hpp"
#include "schur/reporting.hpp"
#include "schur/version.hpp"

namespace {

using namespace schur;

void write_json(const std::string& path, const njson& j) {
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

std::vector<unsigned long> parse_primes(const std::string& s) {
  std::vector<unsigned long> primes;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (tok.empty()) throw SpecParseError("empty entry in prime list", pos);
    unsigned long p = std::stoul(tok);
    if (!is_prime(p)) throw SpecParseError("'" + tok + "' is not prime", pos);
    primes.push_back(p);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return primes;
}

std::string exp_string(unsigned long p, std::size_t e) {
  return std::to_string(p) + "^" + std::to_string(e);
}

int cmd_info(const std::string& spec, const std::string& json_path) {
  PcPresentation g = build_group(spec);
  GroupReport r = analyze(g);
  std::string canonical = render_spec(parse_group_spec(spec));

  std::cout << "group      : " << canonical << "\n";
  std::cout << "order      : " << exp_string(r.p, r.n) << "\n";
  std::cout << "class      : " << r.c << "\n";
  std::cout << "|G'|       : " << exp_string(r.p, r.k) << "\n";
  std::cout << "d(G)       : " << r.d << "\n";
  std::cout << "G^ab       : " << invariants_brief(r.gab) << "\n";
  std::cout << "Z(G)       : " << invariants_brief(r.center) << "\n";
  std::cout << "M(G)       : " << invariants_brief(r.multiplier) << "  (order "
            << exp_string(r.p, r.mult_exp) << ")\n";
  std::cout << "t(G)       : " << r.t << "\n";
  std::cout << "green_exp  : " << green_exponent((long long)r.n) << "\n";
  if (!r.abelian) {
    std::cout << "bound_exp  : " << niroomand_exponent((long long)r.n, (long long)r.k) << "\n";
    std::cout << "attains    : " << (r.attains_niroomand ? "yes" : "no") << "\n";
    std::cout << "conditions : i=" << (r.lemma31.gab_elementary ? "yes" : "no")
              << " ii=" << (r.lemma31.center_elementary ? "yes" : "no")
              << " iii=" << (r.lemma31.center_in_derived ? "yes" : "no")
              << (r.lemma31.exempt_es_product ? " (iii exempt: extraspecial x elementary)" : "")
              << "\n";
  } else {
    std::cout << "bound_exp  : n/a (abelian)\n";
  }
  if (r.improved_bound_alarm)
    std::cout << "ALARM      : exceeds the improved class>=3 exponent at p != 3\n";

  if (!json_path.empty()) write_json(json_path, group_report_to_json(canonical, r));
  return 0;
}

int cmd_scan(const std::string& spec, const std::string& json_path) {
  PcPresentation g = build_group(spec);
  ScanResult scan = quotient_scan(g);
  std::string canonical = render_spec(parse_group_spec(spec));

  std::cout << "group " << canonical << ": order " << exp_string(scan.group.p, scan.group.n)
            << ", class " << scan.group.c << ", " << scan.quotients.size()
            << " central order-p subgroup(s)\n";
  if (scan.group_maximal_class)
    std::cout << "maximal class: |M| <= p^(n-2) "
              << (scan.maximal_class_ok ? "holds" : "VIOLATED") << "\n";
  for (std::size_t i = 0; i < scan.quotients.size(); ++i) {
    const QuotientRecord& q = scan.quotients[i];
    std::cout << "K" << (i + 1) << " = <" << element_to_word(q.k_generator) << ">"
              << ": |G/K| = " << exp_string(q.report.p, q.report.n) << ", class " << q.report.c
              << ", k = " << q.report.k << ", M = " << invariants_brief(q.report.multiplier)
              << ", attains = " << (q.bounds_applicable ? (q.attains ? "yes" : "no") : "n/a")
              << ", divisibility = " << (q.jones_ok ? "pass" : "FAIL") << "\n";
  }
  for (const std::string& a : scan.alarms) std::cout << "ALARM: " << a << "\n";

  if (!json_path.empty()) {
    njson j;
    j["group"] = group_report_to_json(canonical, scan.group);
    j["maximal_class"] = scan.group_maximal_class;
    j["maximal_class_ok"] = scan.maximal_class_ok;
    njson rows = njson::array();
    for (const QuotientRecord& q : scan.quotients) {
      njson row;
      row["k_generator"] = element_to_word(q.k_generator);
      row["quotient"] = group_report_to_json(canonical + "/K", q.report);
      row["bounds_applicable"] = q.bounds_applicable;
      row["attains"] = q.attains;
      row["jones_ok"] = q.jones_ok;
      row["maximal_class_ok"] = q.maximal_class_ok;
      rows.push_back(row);
    }
    j["quotients"] = rows;
    njson alarms = njson::array();
    for (const std::string& a : scan.alarms) alarms.push_back(a);
    j["alarms"] = alarms;
    write_json(json_path, j);
  }
  return 0;
}

int cmd_oracle(const std::string& spec, std::uint64_t cap, const std::string& json_path) {
  PcPresentation g = build_group(spec);
  MultTable tb = multiplication_table(g, cap);  // throws CapExceeded above cap
  AbelianInvariants h2 = h2_bar_oracle(tb, cap);
  AbelianInvariants tails = schur_multiplier(g).multiplier;
  bool match = h2 == tails;
  std::cout << "H2 (bar resolution) : " << invariants_brief(h2) << "\n";
  std::cout << "M  (tails)          : " << invariants_brief(tails) << "\n";
  std::cout << "match               : " << (match ? "yes" : "NO") << "\n";
  if (!json_path.empty()) {
    njson j;
    j["spec"] = render_spec(parse_group_spec(spec));
    j["h2"] = invariants_to_json(h2);
    j["tails"] = invariants_to_json(tails);
    j["match"] = match;
    write_json(json_path, j);
  }
  return match ? 0 : 1;
}

int cmd_bounds(long long n, long long k, const std::string& json_path) {
  long long green = green_exponent(n);
  long long nir = niroomand_exponent(n, k);
  std::cout << "green_exp            : " << green << "\n";
  std::cout << "bound_exp            : " << nir << "\n";
  std::cout << "class>=3 (p!=3) exp  : " << nir - 1 << "\n";
  if (!json_path.empty()) {
    njson j;
    j["n"] = n;
    j["k"] = k;
    j["green_exp"] = green;
    j["niroomand_exp"] = nir;
    j["improved_exp"] = nir - 1;
    write_json(json_path, j);
  }
  return 0;
}

int cmd_verify(const CampaignOptions& opt, const std::string& json_path) {
  VerificationReport rep = run_verification_campaign(opt);
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    const CheckResult& r = rep.checks[i];
    std::cout << "[" << verdict_name(r.verdict) << "] " << r.id;
    if (r.verdict != Verdict::pass)
      std::cout << "  expected: " << r.expected << "  computed: " << r.computed;
    std::cout << "\n";
  }
  std::cout << "summary: " << rep.passed << " pass, " << rep.failed << " fail, " << rep.alarmed
            << " alarm (" << (long long)rep.total_ms << " ms, "
            << resolve_thread_count(opt.threads) << " threads)\n";
  if (!json_path.empty()) write_json(json_path, verification_report_to_json(rep));
  return rep.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur multipliers and structural invariants of finite p-groups"};
  app.set_version_flag("--version", schur::kVersion);
  app.require_subcommand(1);

  std::string spec, json_path, primes_arg;
  std::uint64_t oracle_cap = 32;
  unsigned threads = 0;
  bool fast = false;
  long long bn = 0, bk = 0;

  CLI::App* info = app.add_subcommand("info", "invariant report for one group");
  info->add_option("spec", spec, "group spec, e.g. g3@3 or es@5 x elemab@5,rank=2")->required();
  info->add_option("--json", json_path, "write the JSON report to this path ('-' = stdout)");

  CLI::App* verify = app.add_subcommand("verify-paper", "run the full verification campaign");
  verify->add_option("--primes", primes_arg, "comma-separated prime set (default 3,5,7,11,13,17)");
  verify->add_flag("--fast", fast, "restrict to primes 3,5,7");
  verify->add_option("--json", json_path, "write the campaign report to this path");
  verify->add_option("--oracle-cap", oracle_cap, "bar-resolution oracle cap (default 32)");
  verify->add_option("--threads", threads, "worker threads (default: SCHUR_THREADS or hardware)");

  CLI::App* scan = app.add_subcommand("scan", "per-K reports for central order-p subgroups");
  scan->add_option("spec", spec)->required();
  scan->add_option("--json", json_path);

  CLI::App* oracle = app.add_subcommand("oracle", "bar-resolution H2 versus the tails multiplier");
  oracle->add_option("spec", spec)->required();
  oracle->add_option("--oracle-cap", oracle_cap, "group order cap (default 32)");
  oracle->add_option("--json", json_path);

  CLI::App* bounds = app.add_subcommand("bounds", "bound exponents for given n and k");
  bounds->add_option("n", bn, "log_p of the group order")->required();
  bounds->add_option("k", bk, "log_p of the derived subgroup order")->required();
  bounds->add_option("--json", json_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*info) return cmd_info(spec, json_path);
    if (*scan) return cmd_scan(spec, json_path);
    if (*oracle) return cmd_oracle(spec, oracle_cap, json_path);
    if (*bounds) return cmd_bounds(bn, bk, json_path);
    if (*verify) {
      schur::CampaignOptions opt;
      if (fast) opt.primes = {3, 5, 7};
      if (!primes_arg.empty()) opt.primes = parse_primes(primes_arg);
      opt.oracle_cap = oracle_cap;
      opt.threads = threads;
      return cmd_verify(opt, json_path);
    }
  } catch (const schur::SpecParseError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const schur::PcpParseError& e) {
    std::cerr << "pcp parse error: " << e.what() << "\n";
    return 2;
  } catch (const schur::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

// End-to-end checks of the command-line tool: argv[1] is the path to the
// built binary.  Exercises exit codes, JSON schema round-trips, and the
// campaign's byte-level determinism.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "schur/reporting.hpp"

namespace {

std::string g_cli;
int failures = 0;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = g_cli + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    r.out = "popen failed";
    return r;
  }
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void check(bool ok, const std::string& what, const std::string& detail = "") {
  if (ok) {
    std::printf("[ok] %s\n", what.c_str());
  } else {
    std::printf("[FAIL] %s%s\n", what.c_str(), detail.empty() ? "" : (": " + detail).c_str());
    ++failures;
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_checks <path-to-cli>\n");
    return 2;
  }
  g_cli = argv[1];

  {
    RunResult r = run("bounds 7 4");
    check(r.exit_code == 0 && r.out.find("bound_exp            : 10") != std::string::npos,
          "bounds 7 4 reports exponent 10", r.out);
  }

  {
    RunResult r = run("info g3@3 --json -");
    check(r.exit_code == 0, "info g3@3 exits 0", r.out);
    auto start = r.out.find('{');
    check(start != std::string::npos, "info emits JSON");
    auto j = schur::njson::parse(r.out.substr(start));
    check(j["group"]["n"] == 6 && j["group"]["k"] == 3 && j["group"]["class"] == 2,
          "info JSON carries n/k/class", j.dump());
    check(j["bounds"]["attains"] == true, "g3@3 attains the bound in JSON");
    check(j["invariants"]["multiplier"].size() == 8, "multiplier has eight factors");
    // schema round-trip
    auto [spec, rep] = schur::group_report_from_json(j);
    check(schur::group_report_to_json(spec, rep) == j, "report JSON round-trips");
  }

  {
    check(run("info wombat@3").exit_code == 2, "unknown family exits 2");
    check(run("info h37@5").exit_code == 2, "constraint violation exits 2");
    check(run("info").exit_code == 2, "missing argument exits 2");
    check(run("info file:no_such_file.pcp").exit_code == 3, "unreadable file exits 3");
    check(run("oracle h37").exit_code == 4, "oracle above cap exits 4");
  }

  {
    RunResult r = run("oracle d8");
    check(r.exit_code == 0 && r.out.find("match               : yes") != std::string::npos,
          "oracle d8 matches the tails path", r.out);
  }

  {
    RunResult r = run("scan g2@3 --json -");
    check(r.exit_code == 0, "scan g2@3 exits 0", r.out);
    auto start = r.out.find('{');
    auto j = schur::njson::parse(r.out.substr(start));
    check(j["quotients"].size() == 4, "scan reports 4 central order-p subgroups");
    bool all = true;
    for (const auto& q : j["quotients"]) all = all && q["jones_ok"] == true && q["attains"] == true;
    check(all, "all scan rows pass divisibility and attain the bound");
  }

  {
    RunResult r = run("scan elemab@3,rank=2");
    check(r.exit_code == 0 && r.out.find("attains = n/a") != std::string::npos,
          "abelian scan marks bound columns n/a", r.out);
  }

  {
    RunResult r1 = run("verify-paper --primes 3,5 --threads 2 --json cli_run1.json");
    check(r1.exit_code == 0, "verify-paper --primes 3,5 exits 0", r1.out);
    check(r1.out.find("summary:") != std::string::npos && r1.out.find(" 0 fail") != std::string::npos,
          "campaign summary reports zero failures", r1.out);
    RunResult r2 = run("verify-paper --primes 3,5 --threads 4 --json cli_run2.json");
    check(r2.exit_code == 0, "second campaign run exits 0");
    auto j1 = schur::njson::parse(slurp("cli_run1.json"));
    auto j2 = schur::njson::parse(slurp("cli_run2.json"));
    j1.erase("timing");
    j2.erase("timing");
    check(j1.dump() == j2.dump(), "campaign JSON is byte-identical apart from timing");
    std::remove("cli_run1.json");
    std::remove("cli_run2.json");
  }

  std::printf("cli checks: %d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}

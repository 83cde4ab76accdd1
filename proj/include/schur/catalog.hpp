#pragma once

// Catalog of named test groups and the spec mini-language that the CLI and
// the verification campaign use to address them.
//
//   term     := family[@p][,key=value...]   |   file:<path>
//   spec     := term (" x " term)*
//
// Generator ordering inside each family is fixed so that commutator values
// always lie in later generators (the echelon property); commutators the
// construction does not mention are trivial.

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "schur/pcgroup.hpp"

namespace schur {

struct SpecParseError : std::runtime_error {
  std::size_t pos;
  SpecParseError(const std::string& msg, std::size_t at)
      : std::runtime_error(msg + " (at position " + std::to_string(at) + ")"), pos(at) {}
};

enum class Family { es, g1, g2, g3, h37, example1, example2, elemab, cyclic, d8, q8, file };

struct GroupSpec {
  Family family = Family::elemab;
  unsigned long p = 2;
  std::map<std::string, long> params;  // family-specific (n, rank, a)
  std::string path;                    // for Family::file
  std::vector<GroupSpec> product;      // nonempty only for direct products

  bool operator==(const GroupSpec&) const = default;
};

namespace detail {

struct FamilyInfo {
  const char* name;
  Family family;
  bool fixed_prime;          // p implied when omitted
  unsigned long default_p;
  const char* required_key;  // single required parameter or nullptr
};

inline const std::vector<FamilyInfo>& family_table() {
  static const std::vector<FamilyInfo> t = {
      {"es", Family::es, false, 0, nullptr},
      {"g1", Family::g1, false, 0, "n"},
      {"g2", Family::g2, false, 0, nullptr},
      {"g3", Family::g3, false, 0, nullptr},
      {"h37", Family::h37, true, 3, nullptr},
      {"example1", Family::example1, false, 0, nullptr},
      {"example2", Family::example2, false, 0, nullptr},
      {"elemab", Family::elemab, false, 0, "rank"},
      {"cyclic", Family::cyclic, false, 0, "a"},
      {"d8", Family::d8, true, 2, nullptr},
      {"q8", Family::q8, true, 2, nullptr},
  };
  return t;
}

inline const FamilyInfo* family_by_name(const std::string& s) {
  for (const auto& f : family_table())
    if (s == f.name) return &f;
  return nullptr;
}

inline const FamilyInfo& family_info(Family f) {
  for (const auto& fi : family_table())
    if (fi.family == f) return fi;
  throw std::logic_error("family_info: no entry");
}

}  // namespace detail

/// Family-specific constraints; throws SpecParseError so that invalid specs
/// fail identically whether parsed or constructed programmatically.
inline void validate_spec(const GroupSpec& s, std::size_t at = 0) {
  if (!s.product.empty()) {
    for (const GroupSpec& t : s.product) validate_spec(t, at);
    return;
  }
  if (s.family == Family::file) {
    if (s.path.empty()) throw SpecParseError("file spec needs a path", at);
    return;
  }
  if (!is_prime(s.p)) throw SpecParseError("p must be prime", at);
  auto need = [&](const char* key, long lo) {
    auto it = s.params.find(key);
    if (it == s.params.end())
      throw SpecParseError(std::string("missing parameter '") + key + "'", at);
    if (it->second < lo)
      throw SpecParseError(std::string("parameter '") + key + "' must be >= " + std::to_string(lo),
                           at);
    return it->second;
  };
  auto no_params = [&]() {
    if (!s.params.empty()) throw SpecParseError("family takes no parameters", at);
  };
  switch (s.family) {
    case Family::es:
      no_params();
      if (s.p == 2) throw SpecParseError("es needs an odd prime", at);
      break;
    case Family::g1:
      need("n", 3);
      if (s.params.size() != 1) throw SpecParseError("g1 takes only 'n'", at);
      if (s.p == 2) throw SpecParseError("g1 needs an odd prime", at);
      break;
    case Family::g2:
    case Family::g3:
      no_params();
      if (s.p == 2) throw SpecParseError("family needs an odd prime", at);
      break;
    case Family::h37:
      no_params();
      if (s.p != 3) throw SpecParseError("h37 forces p=3", at);
      break;
    case Family::example1:
    case Family::example2:
      no_params();
      if (s.p < 5) throw SpecParseError("family needs p >= 5", at);
      break;
    case Family::elemab:
      need("rank", 0);
      if (s.params.size() != 1) throw SpecParseError("elemab takes only 'rank'", at);
      break;
    case Family::cyclic:
      need("a", 1);
      if (s.params.size() != 1) throw SpecParseError("cyclic takes only 'a'", at);
      break;
    case Family::d8:
    case Family::q8:
      no_params();
      if (s.p != 2) throw SpecParseError("family forces p=2", at);
      break;
    case Family::file:
      break;
  }
}

inline GroupSpec parse_group_spec(const std::string& text) {
  std::vector<GroupSpec> terms;
  std::size_t pos = 0;
  while (true) {
    std::size_t sep = text.find(" x ", pos);
    std::string term = text.substr(pos, sep == std::string::npos ? sep : sep - pos);
    std::size_t at = pos;
    if (term.empty()) throw SpecParseError("empty spec term", at);

    GroupSpec s;
    if (term.rfind("file:", 0) == 0) {
      s.family = Family::file;
      s.path = term.substr(5);
      if (s.path.empty()) throw SpecParseError("file spec needs a path", at);
    } else {
      std::size_t cut = term.find_first_of("@,");
      std::string name = term.substr(0, cut);
      const detail::FamilyInfo* fi = detail::family_by_name(name);
      if (!fi) throw SpecParseError("unknown family '" + name + "'", at);
      s.family = fi->family;
      std::size_t tp = (cut == std::string::npos) ? term.size() : cut;
      bool have_p = false;
      if (tp < term.size() && term[tp] == '@') {
        std::size_t start = ++tp;
        while (tp < term.size() && isdigit((unsigned char)term[tp])) ++tp;
        if (start == tp) throw SpecParseError("missing prime after '@'", at + start);
        s.p = std::stoul(term.substr(start, tp - start));
        have_p = true;
      }
      if (!have_p) {
        if (!fi->fixed_prime) throw SpecParseError("family needs '@<p>'", at + name.size());
        s.p = fi->default_p;
      }
      while (tp < term.size()) {
        if (term[tp] != ',') throw SpecParseError("expected ',' before parameter", at + tp);
        ++tp;
        std::size_t eq = term.find('=', tp);
        if (eq == std::string::npos) throw SpecParseError("expected 'key=value'", at + tp);
        std::string key = term.substr(tp, eq - tp);
        std::size_t vs = eq + 1, ve = vs;
        while (ve < term.size() && (isdigit((unsigned char)term[ve]) || term[ve] == '-')) ++ve;
        if (vs == ve) throw SpecParseError("missing parameter value", at + vs);
        if (key.empty()) throw SpecParseError("missing parameter name", at + tp);
        if (s.params.count(key)) throw SpecParseError("duplicate parameter '" + key + "'", at + tp);
        s.params[key] = std::stol(term.substr(vs, ve - vs));
        tp = ve;
      }
    }
    validate_spec(s, at);
    terms.push_back(std::move(s));
    if (sep == std::string::npos) break;
    pos = sep + 3;
  }
  if (terms.size() == 1) return terms[0];
  GroupSpec prod;
  prod.product = std::move(terms);
  return prod;
}

inline std::string render_spec(const GroupSpec& s) {
  if (!s.product.empty()) {
    std::string out;
    for (std::size_t i = 0; i < s.product.size(); ++i) {
      if (i) out += " x ";
      out += render_spec(s.product[i]);
    }
    return out;
  }
  if (s.family == Family::file) return "file:" + s.path;
  std::string out = detail::family_info(s.family).name;
  out += "@" + std::to_string(s.p);
  for (const auto& [k, v] : s.params) out += "," + k + "=" + std::to_string(v);
  return out;
}

// ---------------------------------------------------------------------------
// constructors

inline PcPresentation make_elementary_abelian(unsigned long p, std::size_t rank) {
  return PcPresentation(p, rank);
}

inline PcPresentation make_cyclic(unsigned long p, std::size_t a) {
  PcPresentation g(p, a);
  for (std::size_t i = 0; i + 1 < a; ++i) {
    std::vector<int> w(a, 0);
    w[i + 1] = 1;
    g.set_power(i, w);
  }
  return g;
}

/// Extraspecial group of order p^3 and exponent p, p odd.
inline PcPresentation make_extraspecial(unsigned long p) {
  PcPresentation g(p, 3);
  g.set_comm(1, 0, {0, 0, 1});
  return g;
}

/// es(p) x Z_p^(n-3), written out explicitly.
inline PcPresentation make_g1(unsigned long p, std::size_t n) {
  PcPresentation g(p, n);
  std::vector<int> w(n, 0);
  w[2] = 1;
  g.set_comm(1, 0, w);
  return g;
}

/// <a, a1, a2, b1, b2 | [a1,a]=b1, [a2,a]=b2, all p-th powers trivial>
inline PcPresentation make_g2(unsigned long p) {
  PcPresentation g(p, 5);
  g.set_comm(1, 0, {0, 0, 0, 1, 0});
  g.set_comm(2, 0, {0, 0, 0, 0, 1});
  return g;
}

/// <a1,a2,a3,b1,b2,b3 | [a1,a2]=b3, [a2,a3]=b1, [a3,a1]=b2>, class 2,
/// exponent p; generators ordered a1,a2,a3,b1,b2,b3 so the stored values of
/// [a2,a1] and [a3,a2] are the inverses b3^-1, b1^-1.
inline PcPresentation make_g3(unsigned long p) {
  const int q = (int)p - 1;
  PcPresentation g(p, 6);
  g.set_comm(1, 0, {0, 0, 0, 0, 0, q});  // [a2,a1] = b3^-1
  g.set_comm(2, 1, {0, 0, 0, q, 0, 0});  // [a3,a2] = b1^-1
  g.set_comm(2, 0, {0, 0, 0, 0, 1, 0});  // [a3,a1] = b2
  return g;
}

/// The order-3^7 class-3 group extending g3(3) by a central gamma with
/// [b1,a1] = [b2,a2] = [b3,a3] = gamma.  Generators a1,a2,a3,b1,b2,b3,gamma.
inline PcPresentation make_h37() {
  PcPresentation g(3, 7);
  g.set_comm(1, 0, {0, 0, 0, 0, 0, 2, 0});  // [a2,a1] = b3^-1
  g.set_comm(2, 1, {0, 0, 0, 2, 0, 0, 0});  // [a3,a2] = b1^-1
  g.set_comm(2, 0, {0, 0, 0, 0, 1, 0, 0});  // [a3,a1] = b2
  g.set_comm(3, 0, {0, 0, 0, 0, 0, 0, 1});  // [b1,a1] = gamma
  g.set_comm(4, 1, {0, 0, 0, 0, 0, 0, 1});  // [b2,a2] = gamma
  g.set_comm(5, 2, {0, 0, 0, 0, 0, 0, 1});  // [b3,a3] = gamma
  return g;
}

/// <a,a1,a2,a3,a4 | [a,a1]=a2, [a2,a]=a3, [a2,a1]=a4>, class 3, p >= 5.
inline PcPresentation make_example1(unsigned long p) {
  const int q = (int)p - 1;
  PcPresentation g(p, 5);
  g.set_comm(1, 0, {0, 0, q, 0, 0});  // [a1,a] = a2^-1
  g.set_comm(2, 0, {0, 0, 0, 1, 0});  // [a2,a] = a3
  g.set_comm(2, 1, {0, 0, 0, 0, 1});  // [a2,a1] = a4
  return g;
}

/// <a,a1,a2,a3,a4 | [ai,a]=a_{i+1}>, maximal class 4, p >= 5; the binomial
/// tail of the a^(p) power convention vanishes for p >= 5, leaving plain
/// p-th power relations.
inline PcPresentation make_example2(unsigned long p) {
  PcPresentation g(p, 5);
  g.set_comm(1, 0, {0, 0, 1, 0, 0});
  g.set_comm(2, 0, {0, 0, 0, 1, 0});
  g.set_comm(3, 0, {0, 0, 0, 0, 1});
  return g;
}

/// Dihedral group of order 8 on s, r, r^2 (cross-check fixture).
inline PcPresentation make_d8() {
  PcPresentation g(2, 3);
  g.set_power(1, {0, 0, 1});
  g.set_comm(1, 0, {0, 0, 1});
  return g;
}

/// Quaternion group of order 8 on i, j, -1 (cross-check fixture).
inline PcPresentation make_q8() {
  PcPresentation g(2, 3);
  g.set_power(0, {0, 0, 1});
  g.set_power(1, {0, 0, 1});
  g.set_comm(1, 0, {0, 0, 1});
  return g;
}

inline PcPresentation build_group(const GroupSpec& spec) {
  validate_spec(spec);
  if (!spec.product.empty()) {
    PcPresentation g = build_group(spec.product[0]);
    for (std::size_t i = 1; i < spec.product.size(); ++i)
      g = direct_product(g, build_group(spec.product[i]));
    if (!check_consistency(g).empty())
      throw std::logic_error("build_group: product presentation inconsistent");
    return g;
  }

  PcPresentation g(2, 0);
  switch (spec.family) {
    case Family::es:
      g = make_extraspecial(spec.p);
      break;
    case Family::g1:
      g = make_g1(spec.p, (std::size_t)spec.params.at("n"));
      break;
    case Family::g2:
      g = make_g2(spec.p);
      break;
    case Family::g3:
      g = make_g3(spec.p);
      break;
    case Family::h37:
      g = make_h37();
      break;
    case Family::example1:
      g = make_example1(spec.p);
      break;
    case Family::example2:
      g = make_example2(spec.p);
      break;
    case Family::elemab:
      g = make_elementary_abelian(spec.p, (std::size_t)spec.params.at("rank"));
      break;
    case Family::cyclic:
      g = make_cyclic(spec.p, (std::size_t)spec.params.at("a"));
      break;
    case Family::d8:
      g = make_d8();
      break;
    case Family::q8:
      g = make_q8();
      break;
    case Family::file: {
      std::ifstream in(spec.path);
      if (!in) throw std::runtime_error("cannot open '" + spec.path + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      g = pcp_from_text(ss.str());
      break;
    }
  }
  if (!check_consistency(g).empty())
    throw std::logic_error("build_group: presentation inconsistent for " + render_spec(spec));
  return g;
}

inline PcPresentation build_group(const std::string& spec) {
  return build_group(parse_group_spec(spec));
}

}  // namespace schur

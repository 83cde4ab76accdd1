#pragma once

// JSON rendering of group reports (stable schema, fit for diffing campaign
// runs) and human-readable helpers shared by the CLI and the tests.

#include <json.hpp>

#include <string>

#include "schur/bounds.hpp"

namespace schur {

using njson = nlohmann::ordered_json;

inline njson invariants_to_json(const AbelianInvariants& a) {
  njson arr = njson::array();
  for (const Int& d : a.torsion) {
    if (d.fits_slong_p())
      arr.push_back((long)d.get_si());
    else
      arr.push_back(d.get_str());
  }
  for (std::size_t i = 0; i < a.free_rank; ++i) arr.push_back(0);
  return arr;
}

inline AbelianInvariants invariants_from_json(const njson& arr) {
  AbelianInvariants a;
  for (const auto& v : arr) {
    Int d = v.is_string() ? Int(v.get<std::string>()) : Int((long)v.get<long long>());
    if (sgn(d) == 0)
      ++a.free_rank;
    else
      a.torsion.push_back(d);
  }
  return a;
}

/// Stable per-group schema:
/// {group:{spec,p,n,k,class,d}, invariants:{gab,center,multiplier},
///  bounds:{green_exp,niroomand_exp,t,attains}, lemma31:{i,ii,iii,exempt_g1},
///  checks:[...]}
inline njson group_report_to_json(const std::string& spec, const GroupReport& r) {
  njson j;
  j["group"] = {{"spec", spec}, {"p", r.p},     {"n", r.n},
                {"k", r.k},     {"class", r.c}, {"d", r.d}};
  j["invariants"] = {{"gab", invariants_to_json(r.gab)},
                     {"center", invariants_to_json(r.center)},
                     {"multiplier", invariants_to_json(r.multiplier)}};
  njson bounds;
  bounds["green_exp"] = green_exponent((long long)r.n);
  if (!r.abelian && r.k >= 1)
    bounds["niroomand_exp"] = niroomand_exponent((long long)r.n, (long long)r.k);
  else
    bounds["niroomand_exp"] = nullptr;
  bounds["t"] = r.t;
  bounds["attains"] = r.attains_niroomand;
  j["bounds"] = bounds;
  j["lemma31"] = {{"i", r.lemma31.gab_elementary},
                  {"ii", r.lemma31.center_elementary},
                  {"iii", r.lemma31.center_in_derived},
                  {"exempt_g1", r.lemma31.exempt_es_product}};
  j["checks"] = njson::array();
  return j;
}

/// Inverse of group_report_to_json on the fields the schema carries.
inline std::pair<std::string, GroupReport> group_report_from_json(const njson& j) {
  GroupReport r;
  std::string spec = j.at("group").at("spec").get<std::string>();
  r.p = j.at("group").at("p").get<unsigned long>();
  r.n = j.at("group").at("n").get<std::size_t>();
  r.k = j.at("group").at("k").get<std::size_t>();
  r.c = j.at("group").at("class").get<std::size_t>();
  r.d = j.at("group").at("d").get<std::size_t>();
  r.gab = invariants_from_json(j.at("invariants").at("gab"));
  r.center = invariants_from_json(j.at("invariants").at("center"));
  r.multiplier = invariants_from_json(j.at("invariants").at("multiplier"));
  r.abelian = r.k == 0;
  r.mult_exp = r.multiplier.log_order(r.p);
  r.t = j.at("bounds").at("t").get<long long>();
  r.attains_niroomand = j.at("bounds").at("attains").get<bool>();
  r.lemma31.gab_elementary = j.at("lemma31").at("i").get<bool>();
  r.lemma31.center_elementary = j.at("lemma31").at("ii").get<bool>();
  r.lemma31.center_in_derived = j.at("lemma31").at("iii").get<bool>();
  r.lemma31.exempt_es_product = j.at("lemma31").at("exempt_g1").get<bool>();
  return {spec, r};
}

/// Human rendering of an invariant list, capped at 12 factors.
inline std::string invariants_brief(const AbelianInvariants& a, std::size_t cap = 12) {
  if (a.is_trivial()) return "1";
  std::string s;
  std::size_t shown = 0;
  for (const Int& d : a.torsion) {
    if (shown == cap) {
      s += " x ...";
      return s;
    }
    if (shown) s += " x ";
    s += "Z" + d.get_str();
    ++shown;
  }
  if (a.free_rank) {
    if (shown) s += " x ";
    s += "Z^" + std::to_string(a.free_rank);
  }
  return s;
}

}  // namespace schur

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <sstream>

#include "schur/catalog.hpp"
#include "schur/pcgroup.hpp"

using namespace schur;

namespace {

PcElement elem(const PcPresentation& g, std::vector<int> exps) { return PcElement{std::move(exps)}; }

PcElement random_element(const PcPresentation& g, std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(0, (int)g.p() - 1);
  PcElement e = g.identity();
  for (std::size_t i = 0; i < g.n(); ++i) e.exps[i] = dist(rng);
  return e;
}

// brute-force center: the enumeration oracle used to cross-check the
// linear-algebra fast path
std::vector<PcElement> brute_center(const PcPresentation& g) {
  std::vector<PcElement> out;
  std::vector<int> e(g.n(), 0);
  do {
    PcElement x{e};
    bool ok = true;
    for (std::size_t t = 0; t < g.n() && ok; ++t)
      ok = multiply(g, x, g.generator(t)) == multiply(g, g.generator(t), x);
    if (ok) out.push_back(x);
  } while (schur::detail::odometer_next(e, (int)g.p()));
  return out;
}

}  // namespace

TEST_CASE("collection reaches the expected normal forms") {
  PcPresentation es = make_extraspecial(3);
  CHECK(collect_flat(es, {1, 0}) == elem(es, {1, 1, 1}));
  CHECK(collect(es, {{0, 3}}) == es.identity());  // g1^p = 1 here

  PcPresentation e1 = make_example1(5);
  // a2 * a: one rewrite through [a2,a] = a3
  CHECK(collect(e1, {{2, 1}, {0, 1}}) == elem(e1, {1, 0, 1, 1, 0}));

  PcPresentation z4 = make_cyclic(2, 2);
  CHECK(collect(z4, {{0, 2}}) == elem(z4, {0, 1}));  // g1^2 = g2

  CHECK_THROWS_AS(collect_flat(es, {7}), std::out_of_range);
}

TEST_CASE("group arithmetic laws") {
  PcPresentation e1 = make_example1(5);
  CHECK(commutator(e1, e1.generator(2), e1.generator(0)) == e1.generator(3));  // [a2,a] = a3
  PcElement a = collect(e1, {{0, 2}, {1, 3}, {2, 1}});
  CHECK(commutator(e1, a, a) == e1.identity());
  CHECK(multiply(e1, a, e1.identity()) == a);
  CHECK(multiply(e1, a, inverse(e1, a)) == e1.identity());
  CHECK(power(e1, a, 5) == e1.identity());  // exponent p

  std::mt19937 rng(5);
  for (int t = 0; t < 50; ++t) {
    PcElement x = random_element(e1, rng), y = random_element(e1, rng),
              z = random_element(e1, rng);
    CHECK(multiply(e1, multiply(e1, x, y), z) == multiply(e1, x, multiply(e1, y, z)));
  }

  // negative exponents go through element inversion
  PcElement c = collect(e1, {{2, -1}, {0, -1}, {2, 1}, {0, 1}});
  CHECK(c == commutator(e1, e1.generator(2), e1.generator(0)));
}

TEST_CASE("consistency checking") {
  CHECK(check_consistency(make_h37()).empty());
  CHECK(check_consistency(make_elementary_abelian(5, 3)).empty());
  CHECK(check_consistency(PcPresentation(7, 0)).empty());

  // g1^2 = g2, g2^2 = g3, [g2,g1] = g3 collapses: g2 = g1^2 must be central
  PcPresentation bad(2, 3);
  bad.set_power(0, {0, 1, 0});
  bad.set_power(1, {0, 0, 1});
  bad.set_comm(1, 0, {0, 0, 1});
  auto v = check_consistency(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].family == "c");
  CHECK(v[0].i == 0);
  // the two collections differ by exactly g3
  CHECK(v[0].lhs.exps != v[0].rhs.exps);
  CHECK(multiply(bad, inverse(bad, v[0].lhs), v[0].rhs) == bad.generator(2));
}

TEST_CASE("presentation validation") {
  CHECK_THROWS_AS(PcPresentation(4, 2), std::invalid_argument);
  PcPresentation g(3, 3);
  CHECK_THROWS_AS(g.set_power(1, {1, 0, 0}), std::invalid_argument);  // echelon
  CHECK_THROWS_AS(g.set_comm(1, 0, {0, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(g.set_comm(0, 1, {0, 0, 1}), std::invalid_argument);  // j <= i
  CHECK_THROWS_AS(g.set_power(0, {0, 0, 3}), std::invalid_argument);    // exponent range
}

TEST_CASE("normal closure builds induced bases") {
  PcPresentation g2 = make_g2(5);
  std::vector<PcElement> comms;
  for (std::size_t j = 1; j < g2.n(); ++j)
    for (std::size_t i = 0; i < j; ++i) comms.push_back(commutator(g2, g2.generator(j), g2.generator(i)));
  SubgroupBasis der = normal_closure(g2, comms);
  REQUIRE(der.members.size() == 2);  // <b1, b2>, order p^2
  CHECK(der.members[0].leading() == 3);
  CHECK(der.members[1].leading() == 4);

  CHECK(normal_closure(g2, {}).members.empty());

  std::vector<PcElement> all;
  for (std::size_t i = 0; i < g2.n(); ++i) all.push_back(g2.generator(i));
  CHECK(normal_closure(g2, all).members.size() == g2.n());

  // idempotence and membership soundness
  SubgroupBasis again = normal_closure(g2, der.members);
  CHECK(again == der);
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> dist(0, 4);
  for (int t = 0; t < 20; ++t) {
    PcElement prod = multiply(g2, power(g2, der.members[0], dist(rng)),
                              power(g2, der.members[1], dist(rng)));
    CHECK(contains(g2, der, prod));
  }
  CHECK_FALSE(contains(g2, der, g2.generator(0)));
}

TEST_CASE("lower central series and class") {
  auto series = lower_central_series(make_example1(5));
  REQUIRE(series.size() == 4);  // p^5 > p^3 > p^2 > 1
  CHECK(series[0].log_order() == 5);
  CHECK(series[1].log_order() == 3);
  CHECK(series[2].log_order() == 2);
  CHECK(series[3].log_order() == 0);

  CHECK(nilpotency_class(make_example2(5)) == 4);
  CHECK(nilpotency_class(make_elementary_abelian(3, 3)) == 1);
  CHECK(nilpotency_class(PcPresentation(3, 0)) == 0);

  // gamma2 equals the closure of generator commutators
  PcPresentation h = make_h37();
  auto hs = lower_central_series(h);
  CHECK(hs[1] == derived_subgroup(h));
  CHECK(hs[1].log_order() == 4);
  CHECK(hs.size() == 4);  // class 3: log orders 7, 4, 1, 0
}

TEST_CASE("center computation") {
  PcPresentation es = make_extraspecial(3);
  SubgroupBasis z = center(es);
  REQUIRE(z.members.size() == 1);
  CHECK(z.members[0] == es.generator(2));

  // h37 goes through the class-3 enumeration path
  PcPresentation h = make_h37();
  SubgroupBasis zh = center(h);
  REQUIRE(zh.log_order() == 1);
  CHECK(zh.members[0] == h.generator(6));

  PcPresentation ab = make_elementary_abelian(5, 2);
  CHECK(center(ab).log_order() == 2);

  // linear fast path against the enumeration oracle
  for (const PcPresentation& g : {make_g2(3), make_g1(5, 4), make_d8(), make_q8()}) {
    SubgroupBasis fast = center(g);
    auto brute = brute_center(g);
    std::size_t sz = 1;
    for (std::size_t i = 0; i < fast.members.size(); ++i) sz *= g.p();
    CHECK(sz == brute.size());
    for (const PcElement& x : brute) CHECK(contains(g, fast, x));
  }

  CenterOptions tight;
  tight.enumeration_cap = 100;
  CHECK_THROWS_AS(center(make_h37(), tight), CapExceeded);
}

TEST_CASE("elementary abelian predicate") {
  PcPresentation g2 = make_g2(5);
  CHECK(is_elementary_abelian(g2, center(g2)));
  PcPresentation z4 = make_cyclic(2, 2);
  CHECK_FALSE(is_elementary_abelian(z4, whole_group_basis(z4)));
  CHECK(is_elementary_abelian(z4, trivial_subgroup()));
}

TEST_CASE("abelianization and d") {
  auto [g3ab, d3] = abelianization(make_g3(5));
  CHECK(g3ab.is_elementary(5));
  CHECK(g3ab.log_order(5) == 3);
  CHECK(d3 == 3);

  auto [esab, des] = abelianization(make_extraspecial(3));
  CHECK(esab.log_order(3) == 2);
  CHECK(des == 2);

  auto [e1ab, de1] = abelianization(make_example1(7));
  CHECK(e1ab.is_elementary(7));
  CHECK(e1ab.log_order(7) == 2);
  CHECK(de1 == 2);

  auto [tab, dt] = abelianization(PcPresentation(2, 0));
  CHECK(tab.is_trivial());
  CHECK(dt == 0);

  auto [z4ab, dz4] = abelianization(make_cyclic(2, 2));
  CHECK(z4ab.torsion == std::vector<Int>{4});
  CHECK(dz4 == 1);
}

TEST_CASE("central order-p subgroups enumerate the socle lines") {
  CHECK(central_order_p_subgroups(make_extraspecial(5)).size() == 1);
  auto subs = central_order_p_subgroups(make_g2(3));
  CHECK(subs.size() == 4);  // (3^2-1)/2
  for (const SubgroupBasis& k : subs) {
    REQUIRE(k.members.size() == 1);
    CHECK(power(make_g2(3), k.members[0], 3).is_identity());
  }
  CHECK(central_order_p_subgroups(make_elementary_abelian(2, 2)).size() == 3);
}

TEST_CASE("central quotients") {
  PcPresentation h = make_h37();
  SubgroupBasis gamma{std::vector<PcElement>{h.generator(6)}};
  PcPresentation q = central_quotient(h, gamma);
  CHECK(q.n() == 6);
  CHECK(check_consistency(q).empty());
  CHECK(nilpotency_class(q) == 2);
  auto [qab, qd] = abelianization(q);
  CHECK(qab.is_elementary(3));
  CHECK(qab.log_order(3) == 3);
  CHECK(derived_subgroup(q).log_order() == 3);
  // same invariant profile as g3(3)
  PcPresentation g3 = make_g3(3);
  CHECK(nilpotency_class(g3) == 2);
  CHECK(derived_subgroup(g3).log_order() == 3);

  PcPresentation g1 = make_g1(5, 4);
  SubgroupBasis esz{std::vector<PcElement>{g1.generator(2)}};
  PcPresentation q1 = central_quotient(g1, esz);
  auto [ab1, d1] = abelianization(q1);
  CHECK(q1.is_abelian());
  CHECK(ab1.is_elementary(5));
  CHECK(ab1.log_order(5) == 3);

  // trivial K: isomorphic copy
  PcPresentation same = central_quotient(g1, trivial_subgroup());
  CHECK(same == g1);

  // non-central K is rejected
  PcPresentation es = make_extraspecial(3);
  SubgroupBasis notc{std::vector<PcElement>{es.generator(0)}};
  CHECK_THROWS_AS(central_quotient(es, notc), NotCentral);

  // quotient by a Z_{p^2} central subgroup works layer by layer
  PcPresentation big = direct_product(make_cyclic(3, 2), make_extraspecial(3));
  SubgroupBasis zp2{std::vector<PcElement>{big.generator(0), big.generator(1)}};
  PcPresentation qq = central_quotient(big, zp2);
  CHECK(qq.n() == 3);
  CHECK(check_consistency(qq).empty());
}

TEST_CASE("direct products") {
  PcPresentation prod = direct_product(make_extraspecial(5), make_elementary_abelian(5, 1));
  PcPresentation g1 = make_g1(5, 4);
  CHECK(prod.n() == g1.n());
  CHECK(nilpotency_class(prod) == nilpotency_class(g1));
  CHECK(abelianization(prod) == abelianization(g1));

  PcPresentation a = make_g2(3);
  CHECK(direct_product(a, PcPresentation(3, 0)) == a);

  PcPresentation zz = direct_product(make_elementary_abelian(5, 1), make_elementary_abelian(5, 1));
  CHECK(nilpotency_class(zz) == 1);

  CHECK_THROWS_AS(direct_product(make_extraspecial(3), make_elementary_abelian(5, 1)),
                  std::invalid_argument);

  // abelianization of a product concatenates the factors
  auto pa = abelianization(make_g2(3)).first;
  auto pb = abelianization(make_cyclic(3, 2)).first;
  auto pp = abelianization(direct_product(make_g2(3), make_cyclic(3, 2))).first;
  Int expect = pa.order() * pb.order();
  CHECK(pp.order() == expect);
}

TEST_CASE("multiplication tables and pcp reconstruction") {
  PcPresentation z4 = make_cyclic(2, 2);
  MultTable t4 = multiplication_table(z4);
  PcPresentation r4 = pcp_from_multiplication(t4);
  REQUIRE(r4.n() == 2);
  CHECK(r4.power_rhs(0) == std::vector<int>{0, 1});  // g1^2 = g2
  CHECK(abelianization(r4).first.torsion == std::vector<Int>{4});

  MultTable t8 = multiplication_table(make_d8());
  PcPresentation r8 = pcp_from_multiplication(t8);
  CHECK(r8.n() == 3);
  CHECK(nilpotency_class(r8) == 2);
  CHECK(center(r8).log_order() == 1);

  PcPresentation v4 = make_elementary_abelian(2, 2);
  PcPresentation rv = pcp_from_multiplication(multiplication_table(v4));
  CHECK(rv.n() == 2);
  CHECK(rv.is_abelian());
  CHECK(abelianization(rv).first.is_elementary(2));

  CHECK_THROWS_AS(multiplication_table(make_h37(), 32), CapExceeded);

  // order 6 is not a prime power
  MultTable z6;
  z6.size = 6;
  z6.t.resize(36);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) z6.at(i, j) = (std::uint32_t)((i + j) % 6);
  CHECK_THROWS_AS(pcp_from_multiplication(z6), std::invalid_argument);

  // broken associativity is caught
  MultTable brk = multiplication_table(make_elementary_abelian(2, 2));
  brk.at(1, 2) = 1;
  CHECK_THROWS_AS(pcp_from_multiplication(brk), std::invalid_argument);
}

TEST_CASE("pcp text round trip and canonical form") {
  for (const PcPresentation& g :
       {make_extraspecial(3), make_g3(5), make_h37(), make_cyclic(2, 2), PcPresentation(5, 0)}) {
    std::string txt = pcp_to_text(g);
    PcPresentation back = pcp_from_text(txt);
    CHECK(back == g);
    CHECK(pcp_to_text(back) == txt);
  }

  // relation order in the file does not matter
  std::string shuffled =
      "comm 2 1 = g3\n"
      "gens 3\n"
      "# a comment\n"
      "prime 3\n";
  CHECK(pcp_from_text(shuffled) == make_extraspecial(3));

  CHECK_THROWS_AS(pcp_from_text("prime 3\ngens 2\nfrob 1 = g2\n"), PcpParseError);
  CHECK_THROWS_AS(pcp_from_text("gens 2\n"), PcpParseError);
  CHECK_THROWS_AS(pcp_from_text("prime 3\ngens 2\npower 1 = g1\n"), std::invalid_argument);
  CHECK_THROWS_AS(pcp_from_text("prime 3\ngens 2\npower 1 = g2\npower 1 = g2\n"), PcpParseError);
  CHECK_THROWS_AS(pcp_from_text("prime 3\ngens 2\ncomm 1 2 = \n"), PcpParseError);

  CHECK(element_to_word(PcElement{{1, 0, 2}}) == "g1*g3^2");
  CHECK(element_to_word(PcElement{{0, 0}}) == "1");
}

TEST_CASE("the trivial presentation works everywhere") {
  PcPresentation t(3, 0);
  CHECK(collect_flat(t, {}) == t.identity());
  CHECK(check_consistency(t).empty());
  CHECK(center(t).members.empty());
  CHECK(lower_central_series(t).size() == 1);
  CHECK(t.order() == 1);
}

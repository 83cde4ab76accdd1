#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "schur/catalog.hpp"
#include "schur/pcgroup.hpp"

using namespace schur;

TEST_CASE("spec parsing") {
  GroupSpec s = parse_group_spec("g1@5,n=4");
  CHECK(s.family == Family::g1);
  CHECK(s.p == 5);
  CHECK(s.params.at("n") == 4);

  GroupSpec prod = parse_group_spec("es@3 x elemab@3,rank=1");
  REQUIRE(prod.product.size() == 2);
  CHECK(prod.product[0].family == Family::es);
  CHECK(prod.product[1].params.at("rank") == 1);

  // fixed-prime families default their prime
  CHECK(parse_group_spec("h37").p == 3);
  CHECK(parse_group_spec("d8").p == 2);
  CHECK(parse_group_spec("q8@2").p == 2);

  GroupSpec f = parse_group_spec("file:/tmp/some.pcp");
  CHECK(f.family == Family::file);
  CHECK(f.path == "/tmp/some.pcp");
}

TEST_CASE("spec validation errors") {
  CHECK_THROWS_AS(parse_group_spec("h37@5"), SpecParseError);       // h37 forces p=3
  CHECK_THROWS_AS(parse_group_spec("es@2"), SpecParseError);        // odd prime
  CHECK_THROWS_AS(parse_group_spec("es@9"), SpecParseError);        // not prime
  CHECK_THROWS_AS(parse_group_spec("example1@3"), SpecParseError);  // needs p >= 5
  CHECK_THROWS_AS(parse_group_spec("g1@5"), SpecParseError);        // missing n
  CHECK_THROWS_AS(parse_group_spec("g1@5,n=2"), SpecParseError);    // n >= 3
  CHECK_THROWS_AS(parse_group_spec("cyclic@3,a=0"), SpecParseError);
  CHECK_THROWS_AS(parse_group_spec("wombat@3"), SpecParseError);
  CHECK_THROWS_AS(parse_group_spec("g2"), SpecParseError);  // family needs @p
  CHECK_THROWS_AS(parse_group_spec("g2@5,n=1"), SpecParseError);
  CHECK_THROWS_AS(parse_group_spec("es@3 x "), SpecParseError);
  CHECK_THROWS_AS(parse_group_spec("file:"), SpecParseError);
  CHECK_THROWS_AS(parse_group_spec("es@"), SpecParseError);

  // the error carries a position
  try {
    parse_group_spec("es@3 x h37@5");
    FAIL("expected SpecParseError");
  } catch (const SpecParseError& e) {
    CHECK(e.pos == 7);
  }
}

TEST_CASE("render canonicalizes and round-trips") {
  CHECK(render_spec(parse_group_spec("h37")) == "h37@3");
  CHECK(render_spec(parse_group_spec("g1@5,n=4")) == "g1@5,n=4");
  CHECK(render_spec(parse_group_spec("es@3 x elemab@3,rank=1")) == "es@3 x elemab@3,rank=1");

  for (const char* s : {"es@7", "g1@3,n=5", "g2@11", "g3@5", "h37@3", "example1@13", "example2@5",
                        "elemab@2,rank=4", "cyclic@3,a=2", "d8@2", "q8@2",
                        "es@5 x elemab@5,rank=2", "file:/tmp/x.pcp"}) {
    GroupSpec spec = parse_group_spec(s);
    CHECK(parse_group_spec(render_spec(spec)) == spec);
  }
}

TEST_CASE("catalog invariant profiles match the construction targets") {
  struct Row {
    const char* spec;
    std::size_t n, k, c, d;
  };
  // (n, k, class, d) per family
  const Row rows[] = {
      {"es@5", 3, 1, 2, 2},       {"g1@5,n=4", 4, 1, 2, 3}, {"g2@5", 5, 2, 2, 3},
      {"g3@5", 6, 3, 2, 3},       {"h37", 7, 4, 3, 3},      {"example1@5", 5, 3, 3, 2},
      {"example2@5", 5, 3, 4, 2}, {"g2@3", 5, 2, 2, 3},     {"g3@7", 6, 3, 2, 3},
  };
  for (const Row& r : rows) {
    INFO(r.spec);
    PcPresentation g = build_group(r.spec);
    CHECK(g.n() == r.n);
    CHECK(check_consistency(g).empty());
    auto series = lower_central_series(g);
    CHECK(series.size() - 1 == r.c);
    CHECK(series[1].log_order() == r.k);
    CHECK(abelianization(g).second == r.d);
  }
}

TEST_CASE("validation fixtures d8 and q8") {
  for (const char* s : {"d8", "q8"}) {
    PcPresentation g = build_group(s);
    CHECK(g.order() == 8);
    CHECK(nilpotency_class(g) == 2);
    CHECK(center(g).log_order() == 1);
  }
  // different groups: the involution counts tell them apart
  PcPresentation d8 = build_group("d8");
  PcPresentation q8 = build_group("q8");
  auto count_order2 = [](const PcPresentation& g) {
    int cnt = 0;
    std::vector<int> e(g.n(), 0);
    do {
      PcElement x{e};
      if (!x.is_identity() && power(g, x, 2).is_identity()) ++cnt;
    } while (schur::detail::odometer_next(e, 2));
    return cnt;
  };
  CHECK(count_order2(d8) == 5);
  CHECK(count_order2(q8) == 1);
}

TEST_CASE("es@5 has exponent 5") {
  PcPresentation g = build_group("es@5");
  std::vector<int> e(3, 0);
  do {
    CHECK(power(g, PcElement{e}, 5).is_identity());
  } while (schur::detail::odometer_next(e, 5));
}

TEST_CASE("g1 equals the explicit product construction") {
  PcPresentation a = build_group("g1@3,n=5");
  PcPresentation b = build_group("es@3 x elemab@3,rank=2");
  CHECK(a.n() == b.n());
  CHECK(nilpotency_class(a) == nilpotency_class(b));
  CHECK(abelianization(a) == abelianization(b));
  CHECK(derived_subgroup(a).log_order() == derived_subgroup(b).log_order());
  CHECK(center(a).log_order() == center(b).log_order());
}

TEST_CASE("file specs load pcp documents") {
  std::string path = "catalog_test_es.pcp";
  {
    std::ofstream out(path);
    out << pcp_to_text(make_extraspecial(3));
  }
  PcPresentation g = build_group("file:" + path);
  CHECK(g == make_extraspecial(3));

  PcPresentation prod = build_group("file:" + path + " x elemab@3,rank=1");
  CHECK(prod.n() == 4);
  std::remove(path.c_str());

  CHECK_THROWS_AS(build_group("file:nonexistent_file.pcp"), std::runtime_error);
}

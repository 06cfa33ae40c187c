#include <doctest.h>

#include "rank3/error.hpp"
#include "rank3/expected.hpp"
#include "rank3/report.hpp"

using namespace rank3;

namespace {

LabelledLattice chain(std::vector<std::pair<long long, std::string>> steps) {
  LabelledLattice l;
  l.dims.push_back(0);
  for (const auto& [d, lab] : steps) {
    l.dims.push_back(l.dims.back() + d);
    l.edges.push_back({l.dims.size() - 2, l.dims.size() - 1, lab});
  }
  return l;
}

}  // namespace

TEST_CASE("delta_div") {
  CHECK(delta_div(3, 9) == 1);
  CHECK(delta_div(3, 10) == 0);
  CHECK(delta_div(7, 7) == 1);
  CHECK(delta_div(5, 0) == 1);
}

TEST_CASE("expected rows") {
  SUBCASE("semisimple O+(6), l = 5") {
    const auto e = expected({Family::OPlus, 6}, 5);
    CHECK(e.table == 1);
    CHECK(e.factor_counts() == LabelCount{{"FF", 1}, {"X", 1}, {"Y", 1}});
    CHECK(e.dims.at("X") == 7);
    CHECK(e.dims.at("Y") == 20);
    CHECK(e.total_dim() == 28);
    CHECK(e.socle_layers().size() == 1);
    CHECK(e.lattice().dims.size() == 8);
  }
  SUBCASE("O+(6), l = 7: X + (FF - Y - FF)") {
    const auto e = expected({Family::OPlus, 6}, 7);
    CHECK(e.factor_counts() == LabelCount{{"FF", 2}, {"X", 1}, {"Y", 1}});
    CHECK(e.dims.at("Y") == 19);
    CHECK(e.socle_layers().size() == 3);
    // 2 x 4 nodes, no diagonals: FF only occurs inside one component
    CHECK(e.lattice().dims.size() == 8);
  }
  SUBCASE("O-(6), l = 7 carries the Y typo") {
    const auto e = expected({Family::OMinus, 6}, 7);
    REQUIRE(e.typos.size() == 1);
    CHECK(e.typos[0].flag == "TABLE2_Y_DELTA");
    CHECK(e.typos[0].corrected == 20);
    CHECK(e.dims.at("Y") == 20);
  }
  SUBCASE("O-(8), l = 17") {
    const auto e = expected({Family::OMinus, 8}, 17);
    CHECK(e.dims.at("X") == 51);
    CHECK(e.dims.at("Y") == 83);
  }
  SUBCASE("U(5), l = 3: FF summand shared with the uniserial part") {
    const auto e = expected({Family::Unitary, 5}, 3);
    CHECK(e.factor_counts() == LabelCount{{"FF", 2}, {"W", 1}, {"X", 2}, {"Z", 2}});
    CHECK(e.dims.at("W") == 44);
    CHECK(e.total_dim() == 176);
    // 2 x 7 from the product plus 6 diagonals, computed by hand
    CHECK(e.lattice().dims.size() == 20);
  }
  SUBCASE("U(6), l = 3") {
    const auto e = expected({Family::Unitary, 6}, 3);
    CHECK(e.factor_counts() == LabelCount{{"FF", 2}, {"W1", 1}, {"W2", 1}, {"Z", 2}});
    CHECK(e.dims.at("W2") == 229);
  }
  SUBCASE("U(7), l = 3 is uniserial of length 7 plus FF") {
    const auto e = expected({Family::Unitary, 7}, 3);
    CHECK(e.dims.at("X") == 903);
    CHECK(e.dims.at("Z") == 42);
    CHECK(e.dims.at("W") == 859);
    CHECK(e.total_dim() == 2752);
  }
  SUBCASE("the out-of-scale row is recognised") {
    // m = 2n + 1 with n = 4 = 1 mod 3
    const auto e = expected({Family::Unitary, 9}, 3);
    CHECK(e.table == 4);
    CHECK(e.row == 4);
    CHECK(e.out_of_scale);
  }
  CHECK_THROWS_AS(expected({Family::OPlus, 6}, 2), InvalidInput);
  CHECK_THROWS_AS(expected({Family::OPlus, 6}, 9), InvalidInput);
}

TEST_CASE("every row is chosen exactly once") {
  for (SpaceSpec s : {SpaceSpec{Family::OPlus, 6}, SpaceSpec{Family::OMinus, 6}, SpaceSpec{Family::OPlus, 8},
                      SpaceSpec{Family::OMinus, 8}, SpaceSpec{Family::Unitary, 4}, SpaceSpec{Family::Unitary, 5}})
    for (long long ell : {3, 5, 7, 11, 13, 17, 19, 31, 43}) {
      CAPTURE(s.describe());
      CAPTURE(ell);
      const auto e = expected(s, ell);
      CHECK(e.row >= 1);
      const Rank3Params p = closed_params(s);
      CHECK((e.total_dim() + 1 == p.v || e.total_dim() == p.v));
    }
}

TEST_CASE("labelled lattice isomorphism") {
  const auto a = chain({{7, "X"}, {13, "Z"}, {7, "X"}});
  CHECK(isomorphic(a, a));
  CHECK_FALSE(isomorphic(a, chain({{7, "X"}, {13, "Y"}, {7, "X"}})));
  CHECK_FALSE(isomorphic(a, chain({{7, "X"}, {13, "Z"}})));
  // a diamond is not a chain even with matching dimensions
  LabelledLattice d;
  d.dims = {0, 1, 1, 2};
  d.edges = {{0, 1, "A"}, {0, 2, "A"}, {1, 3, "A"}, {2, 3, "A"}};
  LabelledLattice d2 = d;
  std::swap(d2.edges[0], d2.edges[3]);
  CHECK(isomorphic(d, d2));
  d2.edges[0].label = "B";
  CHECK_FALSE(isomorphic(d, d2));
}

TEST_CASE("scale checks and skipped rows") {
  CHECK_THROWS_AS(check_scale({Family::OPlus, 8}, 100), OutOfScale);
  CHECK_NOTHROW(check_scale({Family::OPlus, 8}, 120));
  const auto sk = skipped_rows();
  REQUIRE(sk.size() == 1);
  CHECK(sk[0].table == 4);
  CHECK(sk[0].status == "OUT_OF_SCALE");
  CHECK(suite_instances(true).size() == suite_instances(false).size() + 1);
}

TEST_CASE("reports round-trip through JSON and re-verify identically") {
  for (auto [s, ell] : {std::pair{SpaceSpec{Family::OPlus, 6}, 3LL}, {SpaceSpec{Family::OMinus, 6}, 7LL},
                        {SpaceSpec{Family::Unitary, 4}, 3LL}}) {
    Report r = analyze(s, ell);
    r.timings_ms.clear();
    CHECK(r.verdict.match);
    const auto j = to_json(r);
    const Report back = report_from_json(nlohmann::json::parse(j.dump()));
    CHECK(to_json(back).dump() == j.dump());
    const Verdict v = verify(back, expected(s, ell));
    CHECK(v.match == r.verdict.match);
    CHECK(v.flags == r.verdict.flags);
    for (const auto& p : r.properties) {
      CAPTURE(p.name);
      CHECK(p.ok);
    }
  }
}

TEST_CASE("a tampered report fails verification") {
  Report r = analyze({Family::OPlus, 6}, 5);
  REQUIRE(r.verdict.match);
  r.factors.back().dim += 1;
  CHECK_FALSE(verify(r, expected({Family::OPlus, 6}, 5)).match);
  Report r2 = analyze({Family::OPlus, 6}, 5);
  r2.socle.push_back(r2.socle.back());
  CHECK_FALSE(verify(r2, expected({Family::OPlus, 6}, 5)).match);
}

TEST_CASE("same seed, same report") {
  Report a = analyze({Family::Unitary, 4}, 5, {.seed = 3});
  Report b = analyze({Family::Unitary, 4}, 5, {.seed = 3});
  a.timings_ms.clear();
  b.timings_ms.clear();
  CHECK(to_json(a).dump() == to_json(b).dump());
}

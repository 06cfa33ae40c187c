#include <doctest.h>

#include <set>

#include "rank3/group_action.hpp"
#include "rank3/schreier_sims.hpp"

using namespace rank3;

namespace {

// Group order by closing the generators under multiplication, element by
// element. Only feasible for small groups; serves as an oracle.
std::size_t enumerate_order(const std::vector<Perm>& gens) {
  std::set<Perm> seen{perm_identity(gens[0].size())};
  std::vector<Perm> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Perm y = perm_compose(x, g);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return seen.size();
}

Perm cycle(std::size_t n, std::vector<std::uint32_t> c) {
  Perm p = perm_identity(n);
  for (std::size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
  return p;
}

}  // namespace

TEST_CASE("Schreier-Sims on symmetric and cyclic groups") {
  for (std::size_t n = 2; n <= 9; ++n) {
    std::vector<std::uint32_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = std::uint32_t(i);
    const std::vector<Perm> gens = {cycle(n, {0, 1}), cycle(n, all)};
    BigInt fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= i;
    CHECK(group_order(gens, 7) == fact);
    CHECK(group_order({cycle(n, all)}, 7) == BigInt(n));
  }
  Bsgs b(5, 1);
  CHECK(b.add_generator(cycle(5, {0, 1, 2})));
  CHECK_FALSE(b.add_generator(cycle(5, {0, 2, 1})));
  CHECK(b.contains(perm_identity(5)));
  CHECK_FALSE(b.contains(cycle(5, {3, 4})));
}

TEST_CASE("permutation helpers") {
  const Perm p = cycle(4, {0, 1, 2}), q = cycle(4, {2, 3});
  CHECK(perm_is_identity(perm_compose(p, perm_inverse(p))));
  // right action: apply p, then q
  CHECK(perm_compose(p, q)[1] == q[p[1]]);
  CHECK(perm_is_bijection(p));
  CHECK_FALSE(perm_is_bijection(Perm{0, 0, 1}));
}

TEST_CASE("formula orders") {
  CHECK(formula_order({Family::OPlus, 6}) == 40320);
  CHECK(formula_order({Family::OMinus, 6}) == 51840);
  CHECK(formula_order({Family::Unitary, 4}) == 77760);
  CHECK(formula_order({Family::Unitary, 5}) == 41057280);
}

TEST_CASE("certified isometry groups") {
  for (SpaceSpec s : {SpaceSpec{Family::OPlus, 6}, SpaceSpec{Family::OMinus, 6}, SpaceSpec{Family::Unitary, 4},
                      SpaceSpec{Family::Unitary, 5}}) {
    CAPTURE(s.describe());
    const Space sp(s);
    const PointSets ps = enumerate_points(sp);
    const GroupInfo g = build_group(sp, ps, 0);
    CHECK(g.certified);
    CHECK(g.order == formula_order(s));
    for (const auto& m : g.gens) CHECK(is_isometry(sp, m));
    std::vector<Perm> on_p;
    for (const auto& pp : g.perms) {
      CHECK(perm_is_bijection(pp.on_P));
      CHECK(perm_is_bijection(pp.on_P0));
      on_p.push_back(pp.on_P);
    }
    // scalars of order 3 act trivially on unitary points
    CHECK(g.order_on_points * (s.orthogonal() ? 1 : 3) == g.order);
    if (g.order_on_points < 60000) CHECK(BigInt(enumerate_order(on_p)) == g.order_on_points);
    const Orbitals o = rank_and_orbitals(on_p, ps);
    const Rank3Params p = closed_params(s);
    CHECK(o.transitive);
    CHECK(o.rank == 3);
    CHECK(o.matches_geometry);
    CHECK(o.suborbits == std::vector<std::size_t>{1, std::size_t(std::min(p.a, p.b)), std::size_t(std::max(p.a, p.b))});
  }
}

TEST_CASE("group construction is deterministic") {
  const Space sp({Family::OMinus, 6});
  const PointSets ps = enumerate_points(sp);
  const GroupInfo a = build_group(sp, ps, 0), b = build_group(sp, ps, 0);
  REQUIRE(a.perms.size() == b.perms.size());
  for (std::size_t i = 0; i < a.perms.size(); ++i) CHECK(a.perms[i].on_P == b.perms[i].on_P);
  // a different seed changes only the random phase, never the order
  CHECK(build_group(sp, ps, 99).order == a.order);
}

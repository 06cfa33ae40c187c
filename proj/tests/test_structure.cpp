#include <doctest.h>

#include <set>

#include "rank3/error.hpp"
#include "rank3/structure.hpp"
#include "support.hpp"

using namespace rank3;
using rank3::testing::make;

namespace {

// Every submodule is a sum of cyclic ones: spin each vector, then close
// under sums. Exponential, small modules only.
std::set<std::vector<Fe>> brute_submodules(const ModuleRep& m) {
  const PrimeField& f = m.field();
  const std::size_t n = m.dim();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= f.modulus();
  std::vector<Subspace> all;
  std::set<std::vector<Fe>> keys;
  auto add = [&](const Subspace& s) {
    if (keys.insert(s.basis().data()).second) all.push_back(s);
  };
  add(Subspace(n));
  for (std::size_t k = 1; k < total; ++k) {
    Vec v(n);
    std::size_t x = k;
    for (std::size_t i = 0; i < n; ++i, x /= f.modulus()) v[i] = Fe(x % f.modulus());
    add(spin(m, v));
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) add(sum(f, all[i], all[j]));
  return keys;
}

std::vector<std::uint32_t> perm_of(std::vector<std::uint32_t> p) { return p; }

ModuleRep perm_rep(const PrimeField& f, std::size_t n, std::vector<Perm> gens) {
  std::vector<Generator> g(gens.begin(), gens.end());
  return ModuleRep(f, n, std::move(g));
}

void check_lattice_against_oracle(const ModuleRep& m) {
  const StructureAnalyzer sa(m, 1);
  const Lattice lat = sa.lattice();
  const auto oracle = brute_submodules(m);
  CHECK(lat.nodes.size() == oracle.size());
  for (const auto& s : lat.nodes) {
    CHECK(oracle.count(s.basis().data()));
    CHECK(is_invariant(m, s));
  }
}

}  // namespace

TEST_CASE("lattices of small modules agree with brute force") {
  const auto f3 = PrimeField::make(3), f5 = PrimeField::make(5);
  SUBCASE("trivial module of dimension 2") {
    const ModuleRep m(f3, 2, {Matrix::identity(2)});
    check_lattice_against_oracle(m);
    CHECK(StructureAnalyzer(m, 1).lattice().nodes.size() == 6);  // 0, four lines, whole
  }
  SUBCASE("C4 on 4 points over F5 splits into four distinct lines") {
    const ModuleRep m = perm_rep(f5, 4, {perm_of({1, 2, 3, 0})});
    check_lattice_against_oracle(m);
    CHECK(StructureAnalyzer(m, 1).lattice().nodes.size() == 16);
  }
  SUBCASE("S3 on 3 points over F3") {
    const ModuleRep m = perm_rep(f3, 3, {perm_of({1, 0, 2}), perm_of({1, 2, 0})});
    check_lattice_against_oracle(m);
  }
  SUBCASE("S4 on 4 points over F3") {
    const ModuleRep m = perm_rep(f3, 4, {perm_of({1, 0, 2, 3}), perm_of({1, 2, 3, 0})});
    check_lattice_against_oracle(m);
  }
  SUBCASE("S4 on 4 points over F5") {
    const ModuleRep m = perm_rep(f5, 4, {perm_of({1, 0, 2, 3}), perm_of({1, 2, 3, 0})});
    check_lattice_against_oracle(m);
  }
}

TEST_CASE("lattice limits") {
  const auto f3 = PrimeField::make(3);
  // trivial^4: homogeneous multiplicity above 3
  const ModuleRep m(f3, 4, {Matrix::identity(4)});
  CHECK_THROWS_AS(StructureAnalyzer(m, 1).lattice(), BudgetExceeded);
  const ModuleRep m2(f3, 2, {Matrix::identity(2)});
  CHECK_THROWS_AS(StructureAnalyzer(m2, 1).lattice(1), InvalidInput);
}

TEST_CASE("composition factors of O+(6) over F_3") {
  auto in = make(Family::OPlus, 6, 3);
  const StructureAnalyzer sa(in->pm.on_P(), 0);
  const ChopResult& c = sa.factors();
  std::multiset<std::pair<std::size_t, std::size_t>> got;
  for (std::size_t i = 0; i < c.classes.size(); ++i) got.insert({c.classes[i].dim, c.multiplicity[i]});
  CHECK(got == std::multiset<std::pair<std::size_t, std::size_t>>{{1, 1}, {7, 2}, {13, 1}});
  CHECK(sa.composition_length() == 4);

  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    const FactorClass& x = c.classes[i];
    CHECK(x.abs_irred);
    // independent End(S) dimension from the full commutant system
    CHECK(endomorphism_dim_direct(*x.rep) == 1);
    CHECK(x.trivial == (x.dim == 1));
    CHECK(is_iso(x, x));
    for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(is_iso(x, c.classes[j]));
    CHECK(fingerprint(*x.rep) == x.fingerprint);
  }

  // FF + (X - Z - X): layers FF + X, then Z, then X
  const SocleSeries ss = sa.socle_series();
  REQUIRE(ss.terms.size() == 3);
  std::vector<std::size_t> dims;
  for (const auto& t : ss.terms) dims.push_back(t.dim());
  CHECK(dims == std::vector<std::size_t>{8, 21, 28});
  for (const auto& t : ss.terms) CHECK(is_invariant(in->pm.on_P(), t));
}

TEST_CASE("lattice of O+(6) over F_3 is closed under sum and meet") {
  auto in = make(Family::OPlus, 6, 3);
  const StructureAnalyzer sa(in->pm.on_P(), 0);
  const Lattice lat = sa.lattice();
  const PrimeField& f = in->f;
  for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
    CHECK(is_invariant(in->pm.on_P(), lat.nodes[i]));
    for (std::size_t j = 0; j < i; ++j) {
      CHECK(lat.find(sum(f, lat.nodes[i], lat.nodes[j])) != Lattice::npos);
      CHECK(lat.find(intersect(f, lat.nodes[i], lat.nodes[j])) != Lattice::npos);
    }
  }
  // covering edges add exactly one composition factor
  for (const auto& e : lat.edges) CHECK(lat.nodes[e.to].dim() - lat.nodes[e.from].dim() == sa.factors().classes[e.cls].dim);
  // perp is an order-reversing bijection on the nodes
  for (const auto& s : lat.nodes) CHECK(lat.find(perp(f, s)) != Lattice::npos);
}

TEST_CASE("structure analysis is deterministic for a fixed seed") {
  auto in = make(Family::Unitary, 4, 3);
  const StructureAnalyzer a(in->pm.on_P(), 7), b(in->pm.on_P(), 7);
  const Lattice la = a.lattice(), lb = b.lattice();
  REQUIRE(la.nodes.size() == lb.nodes.size());
  for (std::size_t i = 0; i < la.nodes.size(); ++i) CHECK(la.nodes[i] == lb.nodes[i]);
  CHECK(la.edges == lb.edges);
}

#include <doctest.h>

#include <random>

#include "rank3/linalg.hpp"
#include "rank3/module.hpp"
#include "rank3/perm_module.hpp"
#include "support.hpp"

using namespace rank3;
using rank3::testing::make;

namespace {

Vec random_vec(const PrimeField& f, std::size_t n, std::mt19937_64& rng) {
  Vec v(n);
  for (auto& x : v) x = Fe(rng() % f.modulus());
  return v;
}

Vec unit(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

// Rank of every difference v_{c,a} - v_{c,b} with a fixed, straight from
// the definition (no spinning).
std::size_t difference_rank(const PermModule& pm, long long c) {
  const PrimeField& f = pm.field();
  Matrix m(0, pm.v());
  const Vec base = pm.v_c(c, 0);
  for (std::uint32_t b = 1; b < pm.v(); ++b) {
    Vec row = pm.v_c(c, b);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = f.sub(base[j], row[j]);
    m.append_row(row);
  }
  return rank(f, m);
}

}  // namespace

TEST_CASE("delta_sum, apply_T and v_c on O+(6) over F_5") {
  auto in = make(Family::OPlus, 6, 5);
  const PermModule& pm = in->pm;
  const PrimeField& f = in->f;
  const ModuleRep& m = pm.on_P();
  for (std::uint32_t a = 0; a < pm.v(); ++a) {
    const Vec d = pm.delta_sum(a);
    unsigned s = 0;
    for (Fe x : d) s += x;
    CHECK(s % 5 == 2);  // a = 12
    CHECK(d[a] == 0);
    for (std::size_t k = 0; k < m.num_gens(); ++k) {
      const std::uint32_t ag = std::get<Perm>(m.gen(k))[a];
      CHECK(pm.delta_sum(ag) == m.apply(k, d));
    }
    CHECK(pm.v_c(0, a) == d);
    // v_{2,a} - v_{-4,a} = 6a = a in F_5
    Vec diff = pm.v_c(2, a);
    const Vec other = pm.v_c(-4, a);
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = f.sub(diff[j], other[j]);
    CHECK(diff == unit(pm.v(), a));
  }
  CHECK(pm.apply_T(Vec(pm.v(), 1)) == Vec(pm.v(), 2));

  const Subspace u2 = pm.graph_submodule(2);
  for (std::size_t i = 0; i < u2.dim(); ++i) {
    const auto row = u2.basis().row(i);
    const Vec t = pm.apply_T(row);
    for (std::size_t j = 0; j < t.size(); ++j) CHECK(t[j] == f.mul(4, row[j]));
  }

  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const Vec u = random_vec(f, pm.v(), rng);
    for (std::size_t k = 0; k < m.num_gens(); ++k) CHECK(pm.apply_T(m.apply(k, u)) == m.apply(k, pm.apply_T(u)));
  }
  // root pair inner products
  for (std::uint32_t a = 0; a < pm.v(); a += 3)
    for (std::uint32_t b = 0; b < pm.v(); b += 5) CHECK(inner(f, pm.v_c(2, a), pm.v_c(-4, b)) == 4);
}

TEST_CASE("spinning") {
  auto in = make(Family::OPlus, 6, 5);
  const PermModule& pm = in->pm;
  const PrimeField& f = in->f;
  const ModuleRep& m = pm.on_P();
  CHECK(spin(m, Vec(pm.v(), 1)).dim() == 1);
  CHECK(spin(m, Matrix(0, pm.v())).dim() == 0);
  Vec d = unit(pm.v(), 3);
  d[11] = f.neg(1);
  const Subspace s = spin(m, d);
  // oracle: rank of all differences alpha - beta
  Matrix diffs(0, pm.v());
  for (std::size_t b = 1; b < pm.v(); ++b) {
    Vec r = unit(pm.v(), 0);
    r[b] = f.neg(1);
    diffs.append_row(r);
  }
  CHECK(s.dim() == rank(f, diffs));
  CHECK(s == pm.S());
  CHECK(spin(m, s.basis()) == s);
  CHECK(is_invariant(m, s));
}

TEST_CASE("graph submodules") {
  SUBCASE("O+(6), l = 5") {
    auto in = make(Family::OPlus, 6, 5);
    const auto& pm = in->pm;
    const Subspace u2 = pm.graph_submodule(2), um4 = pm.graph_submodule(-4);
    CHECK(u2.dim() == 7);
    CHECK(um4.dim() == 20);
    CHECK(u2.dim() == difference_rank(pm, 2));
    CHECK(pm.S().contains(in->f, u2));
    // 4 is not a root mod 5 (the roots are 2 and -4 = 1) and 4 + a != 0
    CHECK(pm.graph_submodule(4).dim() == 27);
    CHECK(sum(in->f, u2, um4) == pm.S());
    CHECK(intersect(in->f, u2, um4).dim() == 0);
    CHECK(pm.u_c(4).dim() == pm.v());
    CHECK(pm.u_c(3).dim() == 27);  // 3 + a = 0: every v_{3,a} lies in S
    CHECK(is_invariant(pm.on_P(), u2));
  }
  SUBCASE("U(4), l = 3") {
    auto in = make(Family::Unitary, 4, 3);
    const auto& pm = in->pm;
    const Subspace u1p = pm.graph_submodule(1), u1 = pm.u_c(1);
    CHECK(u1p.dim() == 10);
    CHECK(u1.contains(in->f, Vec(pm.v(), 1)));
    CHECK(u1 == sum(in->f, u1p, pm.T()));
    CHECK(u1.dim() == 11);
  }
  SUBCASE("O+(6), l = 3") {
    auto in = make(Family::OPlus, 6, 3);
    const auto& pm = in->pm;
    const Subspace u2p = pm.graph_submodule(2), u2 = pm.u_c(2);
    CHECK(u2.dim() == u2p.dim() + 1);
    CHECK_FALSE(u2p.contains(in->f, Vec(pm.v(), 1)));
    // <U'_c, U_c> = 0 when c = d
    for (std::size_t i = 0; i < u2p.dim(); ++i)
      for (std::size_t j = 0; j < u2.dim(); ++j) CHECK(inner(in->f, u2p.basis().row(i), u2.basis().row(j)) == 0);
  }
  SUBCASE("O-(6), l = 7: dimension of the Y graph submodule") {
    auto in = make(Family::OMinus, 6, 7);
    const auto& pm = in->pm;
    const Roots r = closed_roots({Family::OMinus, 6});
    // the larger graph submodule carries Y; l = 7 divides 2^3 - 1 but not 2^3 + 1
    const std::size_t dc = difference_rank(pm, r.c), dd = difference_rank(pm, r.d);
    CHECK(std::max(dc, dd) == 20);
    CHECK(pm.graph_submodule(r.d).dim() == dd);
  }
}

TEST_CASE("distinguished submodules, form and cross maps") {
  {
    auto in = make(Family::OPlus, 6, 7);
    CHECK(in->pm.S().contains(in->f, in->pm.T()));
  }
  {
    auto in = make(Family::OPlus, 6, 5);
    CHECK(intersect(in->f, in->pm.S(), in->pm.T()).dim() == 0);
  }
  auto in = make(Family::Unitary, 5, 3);
  const auto& pm = in->pm;
  const auto& f = in->f;
  CHECK(intersect(f, pm.S(), pm.T()).dim() == 0);
  CHECK(pm.S().dim() == pm.v() - 1);

  std::mt19937_64 rng(9);
  const ModuleRep& m = pm.on_P();
  const ModuleRep& m0 = pm.on_P0();
  for (int t = 0; t < 10; ++t) {
    const Vec u = random_vec(f, pm.v(), rng), w = random_vec(f, pm.v(), rng);
    const Vec u0 = random_vec(f, in->ps.P0.size(), rng);
    for (std::size_t k = 0; k < m.num_gens(); ++k) {
      CHECK(inner(f, m.apply(k, u), m.apply(k, w)) == inner(f, u, w));
      CHECK(pm.q_apply(m.apply(k, u)) == m0.apply(k, pm.q_apply(u)));
      CHECK(pm.r_apply(m0.apply(k, u0)) == m.apply(k, pm.r_apply(u0)));
    }
  }
  const Subspace u = pm.graph_submodule(4);
  const Subspace up = perp(f, u);
  CHECK(up.dim() == pm.v() - u.dim());
  CHECK(is_invariant(m, up));
  CHECK(perp(f, up) == u);

  const Subspace q = pm.image_Q(pm.S());
  CHECK(q.dim() > 0);
  CHECK_FALSE(q == pm.T0());
  const Subspace r = pm.image_R(pm.S0());
  CHECK(r.dim() > 0);
  CHECK_FALSE(r == pm.T());
}

TEST_CASE("Q coefficient sums count orthogonal singular points") {
  auto in = make(Family::OPlus, 6, 7);
  for (std::uint32_t a = 0; a < in->pm.v(); ++a) {
    // oracle: count singular points orthogonal to alpha via the form
    unsigned cnt = 0;
    for (PackedVec x : in->ps.P0) cnt += in->space.bilinear(in->ps.P[a], x) == 0;
    CHECK(cnt == 15);
    unsigned s = 0;
    for (Fe x : in->pm.q_apply(unit(in->pm.v(), a))) s += x;
    CHECK(s % 7 == cnt % 7);
  }
}

TEST_CASE("adjacency identity A^2 - (r-s)A - (a-s)I = sJ") {
  for (auto [fam, dim] : {std::pair{Family::OPlus, 6}, {Family::OMinus, 6}, {Family::Unitary, 4}, {Family::Unitary, 5},
                          {Family::OPlus, 8}, {Family::OMinus, 8}}) {
    for (long long ell : {3, 5, 7}) {
      auto in = make(fam, dim, ell);
      CHECK(adjacency_identity_holds(in->pm, closed_params({fam, dim})));
    }
  }
}

TEST_CASE("quotients") {
  auto in = make(Family::OPlus, 6, 3);
  const auto& pm = in->pm;
  const Subspace u1 = pm.u_c(2);
  const Subspace p = perp(in->f, u1);
  const ModuleRep q = quotient_rep(pm.on_P(), p);
  CHECK(q.dim() == u1.dim());
  CHECK(sub_rep(pm.on_P(), u1).dim() == u1.dim());
}

#include <doctest.h>

#include <random>

#include "rank3/linalg.hpp"
#include "rank3/meataxe.hpp"
#include "rank3/poly.hpp"

using namespace rank3;

namespace {

Matrix random_matrix(const PrimeField& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Fe(rng() % f.modulus());
  return m;
}

// Plain determinant by elimination, written independently of the library.
Fe det(const PrimeField& f, Matrix a) {
  const std::size_t n = a.rows();
  Fe d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      d = f.neg(d);
    }
    d = f.mul(d, a(c, c));
    const Fe inv = f.inv(a(c, c));
    for (std::size_t r = c + 1; r < n; ++r) {
      const Fe k = f.mul(a(r, c), inv);
      for (std::size_t j = 0; j < n; ++j) a(r, j) = f.sub(a(r, j), f.mul(k, a(c, j)));
    }
  }
  return d;
}

}  // namespace

TEST_CASE("subspace operations") {
  const auto f = PrimeField::make(5);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 12;
    const Subspace a = Subspace::span(f, random_matrix(f, 1 + rng() % 8, n, rng));
    const Subspace b = Subspace::span(f, random_matrix(f, 1 + rng() % 8, n, rng));
    const Subspace s = sum(f, a, b), m = intersect(f, a, b);
    CHECK(s.dim() + m.dim() == a.dim() + b.dim());
    CHECK(s.contains(f, a));
    CHECK(a.contains(f, m));
    CHECK(b.contains(f, m));
    CHECK(intersect(f, a, a) == a);
    CHECK(perp(f, perp(f, a)) == a);
    CHECK(perp(f, a).dim() == n - a.dim());
    // canonical form: spanning the basis again gives the same subspace
    CHECK(Subspace::span(f, a.basis()) == a);
  }
}

TEST_CASE("inverse and rank") {
  const auto f = PrimeField::make(7);
  std::mt19937_64 rng(2);
  int found = 0;
  while (found < 5) {
    const Matrix a = random_matrix(f, 6, 6, rng);
    if (rank(f, a) != 6) {
      CHECK(det(f, a) == 0);
      continue;
    }
    CHECK(det(f, a) != 0);
    CHECK(multiply(f, a, inverse(f, a)) == Matrix::identity(6));
    ++found;
  }
  Matrix z(3, 3);
  CHECK(rank(f, z) == 0);
  CHECK(left_nullspace(f, z).rows() == 3);
}

TEST_CASE("characteristic polynomial equals det(tI - A)") {
  for (int p : {3, 5, 13}) {
    const auto f = PrimeField::make(p);
    std::mt19937_64 rng(p);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t n = 1 + rng() % 9;
      Matrix a = random_matrix(f, n, n, rng);
      if (trial % 3 == 0)  // include matrices with repeated structure
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < i; ++j) a(i, j) = 0;
      const Poly chi = charpoly(f, a);
      REQUIRE(poly::degree(chi) == int(n));
      CHECK(chi.back() == 1);
      // pointwise agreement only pins the polynomial when l > n, so
      // Cayley-Hamilton is checked too
      for (int t = 0; t < p; ++t) {
        Matrix m = scale(f, a, f.neg(1));
        m = add_identity(f, m, Fe(t));
        CHECK(poly::eval(f, chi, Fe(t)) == det(f, m));
      }
      const Matrix zero = poly::eval_matrix(f, chi, a);
      CHECK(zero == Matrix(n, n));
    }
  }
}

TEST_CASE("polynomial factorization reconstructs the input") {
  const auto f = PrimeField::make(5);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Poly a(1 + rng() % 14);
    for (auto& c : a) c = Fe(rng() % 5);
    a.push_back(1);
    const auto fac = poly::factor(f, a, rng);
    Poly prod{1};
    for (const auto& pf : fac) {
      CHECK(pf.factor.back() == 1);
      // irreducible: no roots for degree 2 and 3, and gcd with x^(5^k) - x trivial below its degree
      if (poly::degree(pf.factor) <= 3 && poly::degree(pf.factor) > 1)
        for (int t = 0; t < 5; ++t) CHECK(poly::eval(f, pf.factor, Fe(t)) != 0);
      for (int k = 0; k < pf.multiplicity; ++k) prod = poly::mul(f, prod, pf.factor);
    }
    CHECK(prod == a);
  }
}

TEST_CASE("factor respects max_degree") {
  const auto f = PrimeField::make(3);
  std::mt19937_64 rng(4);
  // (x - 1)(x^2 + 1): x^2 + 1 is irreducible over F_3
  const Poly a = poly::mul(f, Poly{2, 1}, Poly{1, 0, 1});
  const auto all = poly::factor(f, a, rng);
  CHECK(all.size() == 2);
  const auto lin = poly::factor(f, a, rng, 1);
  REQUIRE(lin.size() == 1);
  CHECK(lin[0].factor == Poly{2, 1});
}

#include <doctest.h>

#include "rank3/error.hpp"
#include "rank3/field.hpp"

using namespace rank3;

TEST_CASE("gf4 arithmetic") {
  CHECK(gf4::conj(gf4::kTau) == gf4::kTau2);
  CHECK(gf4::mul(gf4::kTau, gf4::kTau2) == gf4::kOne);
  CHECK(gf4::add(gf4::kTau, gf4::kTau2) == gf4::kOne);
  CHECK(gf4::mul(gf4::kTau, gf4::kTau) == gf4::add(gf4::kTau, gf4::kOne));  // t^2 = t + 1
  CHECK_THROWS_AS(gf4::inv(0), InvalidInput);
}

TEST_CASE("gf4 field axioms, exhaustive") {
  for (std::uint8_t x = 0; x < 4; ++x) {
    CHECK(gf4::add(x, x) == 0);
    if (x) CHECK(gf4::mul(x, gf4::inv(x)) == 1);
    // conj is an involutive automorphism fixing exactly {0, 1}
    CHECK(gf4::conj(gf4::conj(x)) == x);
    CHECK((gf4::conj(x) == x) == (x < 2));
    for (std::uint8_t y = 0; y < 4; ++y) {
      CHECK(gf4::mul(x, y) == gf4::mul(y, x));
      CHECK(gf4::conj(gf4::mul(x, y)) == gf4::mul(gf4::conj(x), gf4::conj(y)));
      CHECK(gf4::conj(gf4::add(x, y)) == gf4::add(gf4::conj(x), gf4::conj(y)));
      for (std::uint8_t z = 0; z < 4; ++z) {
        CHECK(gf4::mul(gf4::mul(x, y), z) == gf4::mul(x, gf4::mul(y, z)));
        CHECK(gf4::mul(x, gf4::add(y, z)) == gf4::add(gf4::mul(x, y), gf4::mul(x, z)));
      }
    }
  }
  // tau has multiplicative order 3
  CHECK(gf4::mul(gf4::kTau, gf4::mul(gf4::kTau, gf4::kTau)) == 1);
}

TEST_CASE("prime field construction") {
  CHECK(PrimeField::make(3).modulus() == 3);
  CHECK_THROWS_AS(PrimeField::make(2), InvalidInput);
  CHECK_THROWS_AS(PrimeField::make(9), InvalidInput);
  CHECK_THROWS_AS(PrimeField::make(1), InvalidInput);
  CHECK_THROWS_AS(PrimeField::make(-7), InvalidInput);
  CHECK_THROWS_AS(PrimeField::make(257), InvalidInput);
  CHECK(PrimeField::make(251).modulus() == 251);
}

TEST_CASE("reduce_int") {
  const auto f3 = PrimeField::make(3);
  CHECK(f3.reduce(-4) == 2);
  for (int n = 2; n < 40; ++n) CHECK(f3.reduce(1LL << (n - 2)) == f3.reduce(-(1LL << (n - 1))));
  CHECK(PrimeField::make(7).reduce(7) == 0);
  CHECK(PrimeField::make(5).reduce(-1) == 4);
}

TEST_CASE("prime field axioms, exhaustive for l <= 17") {
  for (int p : {3, 5, 7, 11, 13, 17}) {
    const auto f = PrimeField::make(p);
    for (int a = 0; a < p; ++a) {
      const Fe x = Fe(a);
      CHECK(f.add(x, f.neg(x)) == 0);
      if (a) CHECK(f.mul(x, f.inv(x)) == 1);
      CHECK(f.pow(x, p) == x);  // Fermat
      for (int b = 0; b < p; ++b) {
        const Fe y = Fe(b);
        CHECK(f.add(x, y) == (a + b) % p);
        CHECK(f.sub(x, y) == ((a - b) % p + p) % p);
        CHECK(f.mul(x, y) == (a * b) % p);
        for (int c = 0; c < p; ++c) {
          const Fe z = Fe(c);
          CHECK(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
          CHECK(f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z)));
        }
      }
    }
  }
}

TEST_CASE("fastmod agrees with %") {
  for (int p : {3, 5, 7, 17, 101, 251}) {
    const auto f = PrimeField::make(p);
    for (std::uint32_t x : {0u, 1u, 2u, 250u, 65535u, 123456789u, 4294967295u}) CHECK(f.mod32(x) == x % std::uint32_t(p));
  }
}

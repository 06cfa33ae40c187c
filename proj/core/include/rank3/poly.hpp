#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rank3/field.hpp"
#include "rank3/linalg.hpp"

namespace rank3 {

// Dense univariate polynomial over a prime field, coefficients low to high,
// no trailing zeros (the zero polynomial is empty).
using Poly = std::vector<Fe>;

struct PolyFactor {
  Poly factor;  // monic irreducible
  int multiplicity = 1;

  friend bool operator==(const PolyFactor&, const PolyFactor&) = default;
};

namespace poly {

void normalize(Poly& a);
int degree(const Poly& a);  // -1 for zero
Poly monic(const PrimeField& f, const Poly& a);
Poly add(const PrimeField& f, const Poly& a, const Poly& b);
Poly sub(const PrimeField& f, const Poly& a, const Poly& b);
Poly mul(const PrimeField& f, const Poly& a, const Poly& b);
// a = q*b + r; throws InvalidInput when b is zero.
void divmod(const PrimeField& f, const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly mod(const PrimeField& f, const Poly& a, const Poly& b);
Poly div_exact(const PrimeField& f, const Poly& a, const Poly& b);
Poly gcd(const PrimeField& f, Poly a, Poly b);  // monic
Poly derivative(const PrimeField& f, const Poly& a);
Poly powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& m);
Fe eval(const PrimeField& f, const Poly& a, Fe x);

// p(A) by Horner's rule.
Matrix eval_matrix(const PrimeField& f, const Poly& p, const Matrix& a);

// Square-free factorization: returns (square-free factor, multiplicity).
std::vector<PolyFactor> squarefree(const PrimeField& f, const Poly& a);

// Factorization of a nonzero polynomial into monic irreducibles, sorted by
// (degree, coefficients). Only factors of degree <= max_degree are returned,
// which keeps large characteristic polynomials cheap. Randomized equal-degree
// splitting draws from rng.
std::vector<PolyFactor> factor(const PrimeField& f, const Poly& a, std::mt19937_64& rng,
                               int max_degree = 1 << 30);

}  // namespace poly
}  // namespace rank3

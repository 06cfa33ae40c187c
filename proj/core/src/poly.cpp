#include "rank3/poly.hpp"

#include <algorithm>

#include "rank3/error.hpp"

namespace rank3::poly {

void normalize(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly monic(const PrimeField& f, const Poly& a) {
  if (a.empty()) return a;
  Fe k = f.inv(a.back());
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], k);
  return r;
}

Poly add(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  normalize(r);
  return r;
}

Poly sub(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  normalize(r);
  return r;
}

Poly mul(const PrimeField& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += std::uint32_t(a[i]) * b[j];
  Poly r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = Fe(acc[i] % f.modulus());
  normalize(r);
  return r;
}

void divmod(const PrimeField& f, const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.empty()) throw InvalidInput("poly::divmod: division by zero polynomial");
  r = a;
  normalize(r);
  const int db = degree(b);
  if (degree(r) < db) {
    q.clear();
    return;
  }
  q.assign(r.size() - b.size() + 1, 0);
  const Fe lead_inv = f.inv(b.back());
  for (int k = degree(r) - db; k >= 0; --k) {
    Fe c = f.mul(r[k + db], lead_inv);
    q[k] = c;
    if (!c) continue;
    for (int j = 0; j <= db; ++j) r[k + j] = f.sub(r[k + j], f.mul(c, b[j]));
  }
  normalize(r);
  normalize(q);
}

Poly mod(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(f, a, b, q, r);
  return r;
}

Poly div_exact(const PrimeField& f, const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(f, a, b, q, r);
  if (!r.empty()) throw CertificationError("poly::div_exact: nonzero remainder");
  return q;
}

Poly gcd(const PrimeField& f, Poly a, Poly b) {
  normalize(a);
  normalize(b);
  while (!b.empty()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

Poly derivative(const PrimeField& f, const Poly& a) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = f.mul(a[i], f.reduce(static_cast<long long>(i)));
  normalize(r);
  return r;
}

Poly powmod(const PrimeField& f, Poly base, std::uint64_t e, const Poly& m) {
  Poly result{1};
  result = mod(f, result, m);
  base = mod(f, base, m);
  while (e) {
    if (e & 1) result = mod(f, mul(f, result, base), m);
    e >>= 1;
    if (e) base = mod(f, mul(f, base, base), m);
  }
  return result;
}

Fe eval(const PrimeField& f, const Poly& a, Fe x) {
  Fe r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = f.add(f.mul(r, x), a[i]);
  return r;
}

Matrix eval_matrix(const PrimeField& f, const Poly& p, const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix r(n, n);
  if (p.empty()) return r;
  r = add_identity(f, r, p.back());
  for (std::size_t i = p.size() - 1; i-- > 0;) r = add_identity(f, multiply(f, r, a), p[i]);
  return r;
}

namespace {

// For a polynomial whose derivative vanishes, a(x) = b(x^p); returns b.
// Over a prime field the coefficients are their own p-th roots.
Poly pth_root(const PrimeField& f, const Poly& a) {
  const std::size_t p = f.modulus();
  Poly r;
  for (std::size_t i = 0; i < a.size(); i += p) r.push_back(a[i]);
  normalize(r);
  return r;
}

// Distinct-degree factorization of a monic square-free polynomial:
// (product of all irreducible factors of degree d, d).
std::vector<std::pair<Poly, int>> distinct_degree(const PrimeField& f, Poly a, int max_degree) {
  std::vector<std::pair<Poly, int>> out;
  const Poly x{0, 1};
  Poly h = x;  // x^(p^d) mod a
  for (int d = 1; 2 * d <= degree(a) && d <= max_degree; ++d) {
    h = powmod(f, h, f.modulus(), a);
    Poly g = gcd(f, a, sub(f, h, x));
    if (degree(g) > 0) {
      out.emplace_back(g, d);
      a = div_exact(f, a, g);
      h = mod(f, h, a);
    }
  }
  // what is left has no factor of degree <= min(max_degree, deg/2); when its
  // degree is within max_degree that bound covers half of it, so it is irreducible
  if (degree(a) > 0 && degree(a) <= max_degree)
    out.emplace_back(monic(f, a), degree(a));
  return out;
}

// Cantor-Zassenhaus splitting of a product of irreducibles of degree d.
void equal_degree(const PrimeField& f, const Poly& a, int d, std::mt19937_64& rng,
                  std::vector<Poly>& out) {
  if (degree(a) == d) {
    out.push_back(monic(f, a));
    return;
  }
  const std::uint64_t half = (f.modulus() - 1) / 2;
  for (int attempt = 0; attempt < 200; ++attempt) {
    Poly r(static_cast<std::size_t>(degree(a)));
    for (auto& c : r) c = Fe(rng() % f.modulus());
    normalize(r);
    if (degree(r) < 1) continue;
    // b = r^((p^d - 1)/2) = (prod_{i<d} r^(p^i))^((p-1)/2)
    Poly frob = r, prod{1};
    for (int i = 0; i < d; ++i) {
      prod = mod(f, mul(f, prod, frob), a);
      if (i + 1 < d) frob = powmod(f, frob, f.modulus(), a);
    }
    Poly b = powmod(f, prod, half, a);
    Poly g = gcd(f, a, sub(f, b, Poly{1}));
    if (degree(g) > 0 && degree(g) < degree(a)) {
      equal_degree(f, g, d, rng, out);
      equal_degree(f, div_exact(f, a, g), d, rng, out);
      return;
    }
  }
  throw BudgetExceeded("poly::factor: equal-degree splitting did not converge");
}

}  // namespace

std::vector<PolyFactor> squarefree(const PrimeField& f, const Poly& a0) {
  std::vector<PolyFactor> out;
  Poly a = monic(f, a0);
  if (degree(a) < 1) return out;
  // Standard square-free factorization in characteristic p.
  std::vector<PolyFactor> acc;
  auto rec = [&](auto&& self, const Poly& c0, int mult) -> void {
    Poly c = c0;
    if (degree(c) < 1) return;
    Poly dc = derivative(f, c);
    if (dc.empty()) {
      self(self, pth_root(f, c), mult * static_cast<int>(f.modulus()));
      return;
    }
    Poly g = gcd(f, c, dc);
    Poly w = div_exact(f, c, g);
    int i = 1;
    while (degree(w) > 0) {
      Poly y = gcd(f, w, g);
      Poly z = div_exact(f, w, y);
      if (degree(z) > 0) acc.push_back({monic(f, z), i * mult});
      ++i;
      w = y;
      g = div_exact(f, g, y);
    }
    if (degree(g) > 0) self(self, pth_root(f, g), mult * static_cast<int>(f.modulus()));
  };
  rec(rec, a, 1);
  return acc;
}

std::vector<PolyFactor> factor(const PrimeField& f, const Poly& a, std::mt19937_64& rng,
                               int max_degree) {
  if (a.empty()) throw InvalidInput("poly::factor: zero polynomial");
  std::vector<PolyFactor> out;
  for (const auto& sf : squarefree(f, a)) {
    for (const auto& [part, d] : distinct_degree(f, sf.factor, max_degree)) {
      std::vector<Poly> irr;
      equal_degree(f, part, d, rng, irr);
      for (auto& q : irr) out.push_back({std::move(q), sf.multiplicity});
    }
  }
  // merge equal factors (a factor can appear in several square-free parts
  // only through the p-th power recursion, but merging is cheap insurance)
  std::sort(out.begin(), out.end(), [](const PolyFactor& x, const PolyFactor& y) {
    if (x.factor.size() != y.factor.size()) return x.factor.size() < y.factor.size();
    return std::lexicographical_compare(x.factor.rbegin(), x.factor.rend(), y.factor.rbegin(),
                                        y.factor.rend());
  });
  std::vector<PolyFactor> merged;
  for (auto& pf : out) {
    if (!merged.empty() && merged.back().factor == pf.factor)
      merged.back().multiplicity += pf.multiplicity;
    else
      merged.push_back(std::move(pf));
  }
  return merged;
}

}  // namespace rank3::poly

#include "rank3/field.hpp"

#include <string>

#include "rank3/error.hpp"

namespace rank3 {

std::uint8_t gf4::inv(std::uint8_t a) {
  switch (a & 3) {
    case 1: return 1;
    case 2: return 3;
    case 3: return 2;
    default: throw InvalidInput("GF(4): inverse of zero");
  }
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField PrimeField::make(long long ell) {
  if (ell == 2) throw InvalidInput("characteristic 2 is not supported (ell must be odd)");
  if (!is_prime(ell)) throw InvalidInput("ell = " + std::to_string(ell) + " is not prime");
  if (ell > static_cast<long long>(kMaxModulus))
    throw InvalidInput("ell = " + std::to_string(ell) + " exceeds the supported maximum " +
                       std::to_string(kMaxModulus));
  return PrimeField(static_cast<std::uint32_t>(ell));
}

PrimeField::PrimeField(std::uint32_t p) : p_(p), magic_(UINT64_MAX / p + 1) {
  for (std::uint32_t a = 1; a < p; ++a)
    for (std::uint32_t b = 1; b < p; ++b)
      if (a * b % p == 1) { inv_[a] = Fe(b); break; }
}

Fe PrimeField::inv(Fe a) const {
  if (a % p_ == 0) throw InvalidInput("F_" + std::to_string(p_) + ": inverse of zero");
  return inv_[a];
}

Fe PrimeField::pow(Fe a, std::uint64_t e) const {
  std::uint32_t base = a % p_, r = 1;
  while (e) {
    if (e & 1) r = r * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return Fe(r);
}

Fe PrimeField::reduce(long long z) const {
  long long r = z % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return Fe(r);
}

}  // namespace rank3

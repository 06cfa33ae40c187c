#pragma once

#include <array>
#include <cstdint>

namespace rank3 {

// GF(2) element, kept as a type mostly for documentation at interfaces.
struct Gf2 {
  std::uint8_t v = 0;

  friend constexpr Gf2 operator+(Gf2 a, Gf2 b) { return {std::uint8_t(a.v ^ b.v)}; }
  friend constexpr Gf2 operator*(Gf2 a, Gf2 b) { return {std::uint8_t(a.v & b.v)}; }
  friend constexpr bool operator==(Gf2, Gf2) = default;
};

// GF(4) = {0, 1, t, t^2} with t^2 = t + 1, encoded as 0, 1, 2, 3.
// The encoding is the polynomial basis: bit0 = constant, bit1 = t.
// So t^2 = t + 1 has code 3, and addition is xor.
namespace gf4 {

inline constexpr std::uint8_t kZero = 0;
inline constexpr std::uint8_t kOne = 1;
inline constexpr std::uint8_t kTau = 2;
inline constexpr std::uint8_t kTau2 = 3;

inline constexpr std::array<std::array<std::uint8_t, 4>, 4> kMul = {{
    {0, 0, 0, 0},
    {0, 1, 2, 3},
    {0, 2, 3, 1},
    {0, 3, 1, 2},
}};

constexpr std::uint8_t add(std::uint8_t a, std::uint8_t b) { return a ^ b; }
constexpr std::uint8_t mul(std::uint8_t a, std::uint8_t b) { return kMul[a & 3][b & 3]; }
// x -> x^2, the Frobenius; swaps t and t^2.
constexpr std::uint8_t conj(std::uint8_t a) { return kMul[a & 3][a & 3]; }
// throws InvalidInput on zero
std::uint8_t inv(std::uint8_t a);

}  // namespace gf4

struct Gf4 {
  std::uint8_t v = 0;

  static constexpr Gf4 zero() { return {gf4::kZero}; }
  static constexpr Gf4 one() { return {gf4::kOne}; }
  static constexpr Gf4 tau() { return {gf4::kTau}; }
  static constexpr Gf4 tau2() { return {gf4::kTau2}; }

  friend constexpr Gf4 operator+(Gf4 a, Gf4 b) { return {gf4::add(a.v, b.v)}; }
  friend constexpr Gf4 operator*(Gf4 a, Gf4 b) { return {gf4::mul(a.v, b.v)}; }
  friend constexpr bool operator==(Gf4, Gf4) = default;
  constexpr Gf4 conj() const { return {gf4::conj(v)}; }
  Gf4 inv() const { return {gf4::inv(v)}; }
};

// Element of a prime field. The linear-algebra engine stores one byte per
// entry, which caps the modulus at 251.
using Fe = std::uint8_t;

class PrimeField {
 public:
  static constexpr std::uint32_t kMaxModulus = 251;

  // Odd primes up to kMaxModulus; everything else throws InvalidInput.
  static PrimeField make(long long ell);

  std::uint32_t modulus() const { return p_; }

  Fe add(Fe a, Fe b) const {
    std::uint32_t s = std::uint32_t(a) + b;
    return Fe(s >= p_ ? s - p_ : s);
  }
  Fe sub(Fe a, Fe b) const {
    return Fe(a >= b ? a - b : a + p_ - b);
  }
  Fe neg(Fe a) const { return Fe(a == 0 ? 0 : p_ - a); }
  Fe mul(Fe a, Fe b) const { return Fe((std::uint32_t(a) * b) % p_); }
  Fe inv(Fe a) const;  // throws InvalidInput on zero
  Fe pow(Fe a, std::uint64_t e) const;

  Fe reduce(long long z) const;

  // x mod p for any 32-bit x, without a hardware divide (Lemire's fastmod).
  std::uint32_t mod32(std::uint32_t x) const {
    std::uint64_t low = magic_ * x;
    return std::uint32_t((static_cast<unsigned __int128>(low) * p_) >> 64);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p_ = 3;
  std::uint64_t magic_ = 0;
  std::array<Fe, 256> inv_{};
};

bool is_prime(long long n);

}  // namespace rank3

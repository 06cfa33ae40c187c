#pragma once

#include <memory>

#include "rank3/geometry.hpp"
#include "rank3/group_action.hpp"
#include "rank3/perm_module.hpp"

namespace rank3::testing {

// Everything up to the permutation module for one instance. Held by pointer
// because PermModule keeps a reference to the point sets.
struct Instance {
  SpaceSpec spec;
  Space space;
  PointSets ps;
  GroupInfo group;
  PrimeField f;
  PermModule pm;

  Instance(SpaceSpec s, long long ell)
      : spec(s),
        space(s),
        ps(enumerate_points(space)),
        group(build_group(space, ps, 0)),
        f(PrimeField::make(ell)),
        pm(f, ps, group.perms) {}
};

inline std::unique_ptr<Instance> make(Family fam, int dim, long long ell) {
  return std::make_unique<Instance>(SpaceSpec{fam, dim}, ell);
}

// Independent quadratic/hermitian evaluation straight from coordinates, used
// as an oracle for the packed implementation. Orthogonal: Q = sum e_i f_i,
// plus e_n^2 + f_n^2 for the minus type. Unitary: (v, v) = sum tr(e_i f_i^2)
// (+ g^3 for odd m), computed over GF(4) with t^2 = t + 1.
inline int oracle_norm(const SpaceSpec& s, PackedVec v) {
  const int n = s.n();
  auto c = [&](int i) { return int((v >> (2 * i)) & 3); };
  if (s.orthogonal()) {
    int q = 0;
    for (int i = 0; i < n; ++i) q ^= (c(i) & c(n + i) & 1);
    if (s.family == Family::OMinus) q ^= (c(n - 1) & 1) ^ (c(2 * n - 1) & 1);
    return q;
  }
  auto mul = [](int a, int b) { return int(gf4::mul(std::uint8_t(a), std::uint8_t(b))); };
  int h = 0;
  for (int i = 0; i < n; ++i) {
    const int x = mul(c(i), mul(c(n + i), c(n + i)));  // e_i * conj(f_i)
    h ^= x ^ mul(x, x);                                // x + conj(x)
  }
  if (s.odd_unitary()) h ^= mul(c(2 * n), mul(c(2 * n), c(2 * n)));
  return h;
}

}  // namespace rank3::testing

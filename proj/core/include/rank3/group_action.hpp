#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rank3/geometry.hpp"
#include "rank3/schreier_sims.hpp"

namespace rank3 {

// Linear map of the formed space, stored as the images of the basis vectors.
struct MatGen {
  std::vector<PackedVec> images;
  std::string name;

  PackedVec apply(const Space& space, PackedVec x) const;
  // order of the matrix (smallest k with g^k = 1), by brute force
  int order(const Space& space) const;
};

MatGen identity_matrix(const Space& space);
// x -> x + (x,v) v; requires Q(v) = 1 on an orthogonal space.
MatGen transvection(const Space& space, PackedVec v);
// x -> x + (lambda - 1)(x,v) v; requires (v,v) = 1 on a unitary space.
MatGen pseudo_reflection(const Space& space, PackedVec v, std::uint8_t lambda);
// Checks the form (and Q for orthogonal spaces) on all pairs of basis vectors.
bool is_isometry(const Space& space, const MatGen& g);

// The unpruned pool: transvections (or pseudo-reflections for both
// nontrivial lambda) for every admissible vector of support at most 3, in a
// fixed order.
std::vector<MatGen> reflection_pool(const Space& space);

struct PermPair {
  Perm on_P;
  Perm on_P0;
};

PermPair induced_perm(const Space& space, const PointSets& ps, const MatGen& g);

// Exact order of the group generated by the permutations.
BigInt group_order(const std::vector<Perm>& perms, std::uint64_t seed);

// |O^eps(2n,2)| or |GU(m,2)|.
BigInt formula_order(const SpaceSpec& spec);

struct GroupInfo {
  std::vector<MatGen> gens;    // pruned generating set
  std::vector<PermPair> perms; // induced permutations, same order as gens
  BigInt order;                // of the matrix group (faithful action)
  BigInt formula;              // closed formula
  BigInt order_on_points;      // of the permutation group induced on P
  std::vector<std::uint32_t> base;
  std::vector<std::size_t> orbit_lengths;
  std::size_t pool_size = 0;
  bool certified = false;      // order == formula
};

// Selects a small generating subset of the pool and certifies the group
// order. For orthogonal families the action on P is faithful. For unitary
// families the scalars of order 3 act trivially on points, so the order is
// computed on the nonsingular vectors and the point action is reported
// separately.
GroupInfo build_group(const Space& space, const PointSets& ps, std::uint64_t seed);

struct Orbitals {
  bool transitive = false;
  int rank = 0;
  std::vector<std::size_t> suborbits;  // sizes, ascending
  bool matches_geometry = false;       // orbitals are exactly {=, Delta, Phi}
};

Orbitals rank_and_orbitals(const std::vector<Perm>& perms, const PointSets& ps, std::uint32_t base_point = 0);

}  // namespace rank3

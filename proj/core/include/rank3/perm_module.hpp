#pragma once

#include <cstdint>
#include <vector>

#include "rank3/geometry.hpp"
#include "rank3/group_action.hpp"
#include "rank3/module.hpp"

namespace rank3 {

// The permutation modules F_l P and F_l P0 of one instance. Both share the
// generator list of the group, so equivariance checks can go back and forth.
class PermModule {
 public:
  PermModule(const PrimeField& f, const PointSets& ps, const std::vector<PermPair>& perms);

  const PrimeField& field() const { return f_; }
  const PointSets& points() const { return *ps_; }
  const ModuleRep& on_P() const { return mP_; }
  const ModuleRep& on_P0() const { return mP0_; }
  std::size_t v() const { return ps_->P.size(); }

  // [Delta(alpha)]
  Vec delta_sum(std::uint32_t alpha) const;
  // Linear extension of alpha -> [Delta(alpha)].
  Vec apply_T(std::span<const Fe> u) const;
  // c alpha + [Delta(alpha)], c reduced mod l
  Vec v_c(long long c, std::uint32_t alpha) const;

  // U'_c: spin of v_{c,a0} - v_{c,b} over all b.
  Subspace graph_submodule(long long c) const;
  // U_c: spin of all v_{c,a}.
  Subspace u_c(long long c) const;

  // S(FP) (zero coefficient sum) and T(FP) (multiples of [P]).
  Subspace S() const;
  Subspace T() const;
  Subspace S0() const;
  Subspace T0() const;

  // alpha -> [Lambda(alpha)], FP -> FP0
  Vec q_apply(std::span<const Fe> u) const;
  // beta -> [Gamma(beta)], FP0 -> FP
  Vec r_apply(std::span<const Fe> u) const;
  Subspace image_Q(const Subspace& s) const;
  Subspace image_R(const Subspace& s) const;

  // Adjacency matrix of the Delta graph (row alpha = [Delta(alpha)]).
  Matrix adjacency() const;

 private:
  PrimeField f_;
  const PointSets* ps_;
  ModuleRep mP_, mP0_;
};

Fe inner(const PrimeField& f, std::span<const Fe> u, std::span<const Fe> v);

// A^2 - (r - s)A - (a - s)I == sJ over F_l (counting common neighbours).
bool adjacency_identity_holds(const PermModule& pm, const Rank3Params& p);

}  // namespace rank3

#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "rank3/field.hpp"
#include "rank3/linalg.hpp"
#include "rank3/poly.hpp"
#include "rank3/schreier_sims.hpp"

namespace rank3 {

// A group generator acting on row vectors from the right, either as a
// coordinate permutation (x g)[p[i]] = x[i] or as a dense matrix.
using Generator = std::variant<Perm, Matrix>;

class ModuleRep {
 public:
  ModuleRep(const PrimeField& f, std::size_t dim, std::vector<Generator> gens);

  const PrimeField& field() const { return f_; }
  std::size_t dim() const { return dim_; }
  std::size_t num_gens() const { return gens_.size(); }
  const Generator& gen(std::size_t k) const { return gens_[k]; }
  bool is_permutation(std::size_t k) const { return std::holds_alternative<Perm>(gens_[k]); }

  // out = x g_k
  void apply(std::size_t k, std::span<const Fe> x, std::span<Fe> out) const;
  Vec apply(std::size_t k, std::span<const Fe> x) const;
  // rows of u times g_k
  Matrix apply_rows(std::size_t k, const Matrix& u) const;
  Matrix dense(std::size_t k) const;
  // The representation x -> x g^T (for permutations, the inverse). Spinning
  // under it realizes submodules of the dual.
  ModuleRep transposed() const;

 private:
  PrimeField f_;
  std::size_t dim_;
  std::vector<Generator> gens_;
};

// Generator-closure of the seeds, canonical basis.
Subspace spin(const ModuleRep& m, const Matrix& seeds);
Subspace spin(const ModuleRep& m, std::span<const Fe> seed);
// Applies every generator to every basis row and checks membership.
bool is_invariant(const ModuleRep& m, const Subspace& s);

// Action on a submodule in the coordinates of its canonical basis (the
// coordinate of a member vector is its value at the pivot columns).
ModuleRep sub_rep(const ModuleRep& m, const Subspace& s);
// Action on m / s in the coordinates of the free columns of s.
ModuleRep quotient_rep(const ModuleRep& m, const Subspace& s);
// Matrix of an ambient linear map (stored row-wise) induced on m / s. The map
// must preserve s; that is not checked here.
Matrix induced_on_quotient(const PrimeField& f, const Matrix& ambient, const Subspace& s);
// Embeds quotient coordinates back into the ambient space (zeros at pivots).
Matrix lift_rows(const Subspace& s, const Matrix& q_rows);

// A word in the generators, read left to right (x w = x g_{w0} g_{w1} ...).
using Word = std::vector<std::uint16_t>;

// p(A) where A = sum c_i w_i. Evaluated on any representation with the same
// generator list, which is what lets a kernel computed on one module be
// compared with another.
struct AlgebraElement {
  std::vector<std::pair<Fe, Word>> terms;
  Poly poly{0, 1};  // default p(x) = x

  static AlgebraElement random(std::size_t num_gens, std::mt19937_64& rng, std::uint32_t p,
                               int max_terms = 3, int max_len = 12);
};

Matrix evaluate_sum(const ModuleRep& m, const AlgebraElement& a);  // A
Matrix evaluate(const ModuleRep& m, const AlgebraElement& a);      // p(A)
Matrix word_matrix(const ModuleRep& m, const Word& w);

}  // namespace rank3

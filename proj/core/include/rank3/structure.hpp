#pragma once

#include <cstdint>
#include <vector>

#include "rank3/meataxe.hpp"

namespace rank3 {

struct SocleSeries {
  std::vector<Subspace> terms;                   // S_1 .. S_k = M
  std::vector<std::vector<std::size_t>> layers;  // layer -> multiplicity per class
};

struct LatticeEdge {
  std::size_t from = 0, to = 0;  // from is covered by to
  std::size_t cls = 0;           // factor class of to / from
  friend bool operator==(const LatticeEdge&, const LatticeEdge&) = default;
};

struct Lattice {
  std::vector<Subspace> nodes;  // sorted by (dimension, canonical basis)
  std::vector<LatticeEdge> edges;

  std::size_t find(const Subspace& s) const;  // npos if absent
  // reflexive-transitive closure of the covering relation
  std::vector<std::vector<char>> order() const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// Kernel-vector data for one factor class: theta has nullity 1 on the class
// and, when `separating`, is invertible on every other class.
struct PeakWord {
  AlgebraElement theta;
  StandardBasis sb;
  bool separating = false;
};

class StructureAnalyzer {
 public:
  StructureAnalyzer(ModuleRep m, std::uint64_t seed);

  const ModuleRep& module() const { return m_; }
  const ChopResult& factors() const { return chop_; }
  const std::vector<PeakWord>& peaks() const { return peaks_; }
  std::size_t composition_length() const;

  // Hom(S, M/below) for every class S as images of the standard basis of S in
  // the free-column coordinates of `below`. Classes whose flag in `skip` is
  // set are not searched.
  std::vector<std::vector<Matrix>> socle_homs(const Subspace& below, const ModuleRep& quotient,
                                              const std::vector<char>& skip = {}) const;
  // Preimage of soc(M / below); per-class multiplicities in *mult.
  Subspace socle(const Subspace& below, std::vector<std::size_t>* mult = nullptr) const;
  SocleSeries socle_series() const;
  // All submodules. Throws InvalidInput when the composition length exceeds
  // length_bound, BudgetExceeded past node_budget or a homogeneous
  // multiplicity above 3.
  Lattice lattice(std::size_t length_bound = 8, std::size_t node_budget = 5000) const;

 private:
  void find_peaks(std::uint64_t seed);

  ModuleRep m_;
  ChopResult chop_;
  std::vector<PeakWord> peaks_;
  std::vector<Matrix> theta_m_;  // peak elements evaluated on m_
};

}  // namespace rank3

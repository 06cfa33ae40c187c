#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rank3/geometry.hpp"

namespace rank3 {

// 1 if i divides j, else 0.
int delta_div(long long i, long long j);

// A connected piece of a structure diagram: composition factors as poset
// elements, `covers` lists (lower, upper) pairs of the Hasse diagram.
struct DiagramComponent {
  std::vector<std::string> elems;
  std::vector<std::pair<int, int>> covers;
};

using LabelCount = std::map<std::string, int>;

// Abstract lattice with edges labelled by the factor they add.
struct LabelledLattice {
  struct Edge {
    std::size_t from = 0, to = 0;
    std::string label;
  };
  std::vector<long long> dims;
  std::vector<LabelCount> content;  // may be empty when unknown
  std::vector<Edge> edges;
};

// A table dimension whose printed formula disagrees with the value the
// module actually has. Computation decides which one holds.
struct KnownTypo {
  std::string flag;   // e.g. TABLE2_Y_DELTA
  std::string label;
  long long printed = 0;
  long long corrected = 0;
  std::string note;
};

struct ExpectedStructure {
  SpaceSpec spec;
  long long ell = 0;
  int table = 0;  // 1..4
  int row = 0;    // 1-based row of that table
  std::string condition;
  std::string shape;
  bool out_of_scale = false;

  std::map<std::string, long long> dims;     // label -> dimension (corrected formulas)
  std::map<std::string, long long> printed;  // label -> dimension as printed
  std::vector<KnownTypo> typos;              // entries where printed != corrected
  std::vector<DiagramComponent> components;

  LabelCount factor_counts() const;
  // Socle layers bottom to top, each as a label multiset.
  std::vector<LabelCount> socle_layers() const;
  // The full submodule lattice implied by the diagram over F_ell. A simple
  // summand isomorphic to a factor elsewhere adds the diagonal submodules.
  LabelledLattice lattice() const;
  long long total_dim() const;
};

// Throws InvalidInput when ell is not an odd prime or the size is outside
// the covered range.
ExpectedStructure expected(const SpaceSpec& spec, long long ell);

// True iff there is a bijection of nodes preserving dimensions and labelled
// covering edges.
bool isomorphic(const LabelledLattice& a, const LabelledLattice& b);

}  // namespace rank3

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rank3/module.hpp"

namespace rank3 {

// Characteristic polynomial by iterated cyclic (Krylov) subspaces; monic.
Poly charpoly(const PrimeField& f, const Matrix& a);

// theta acts on the factor with nullity equal to deg(theta.poly), and one
// kernel vector spins to the whole module while one kernel vector of the
// transpose spins to the whole dual (Norton's criterion).
struct IrreducibilityCertificate {
  AlgebraElement theta;
  std::size_t nullity = 0;
};

// Spinning record for a cyclic module: basis b_0 = seed, b_t = b_src * g.
// rel[g] is the action of g in that basis.
struct StandardBasis {
  std::size_t dim = 0;
  Vec seed;
  std::vector<std::pair<std::uint32_t, std::uint16_t>> steps;  // entry t-1 builds b_t
  std::vector<Matrix> rel;
};

// Throws CertificationError if seed does not generate the module.
StandardBasis standard_basis(const ModuleRep& s, std::span<const Fe> seed);
// Images of the standard basis under the map sending the seed to u.
Matrix standard_images(const StandardBasis& sb, const ModuleRep& target, std::span<const Fe> u);
// Basis of Hom(S, target), each given by the images of the standard basis
// of S. Candidates are rows spanning a space that contains every possible
// image of the seed (typically the kernel of the certificate element).
std::vector<Matrix> hom_space(const StandardBasis& sb, const ModuleRep& target, const Matrix& candidates);

struct FactorClass {
  std::size_t dim = 0;
  std::vector<Fe> fingerprint;
  std::shared_ptr<const ModuleRep> rep;
  IrreducibilityCertificate cert;
  StandardBasis sb;       // from a kernel vector of cert.theta
  bool abs_irred = false;
  bool trivial = false;   // every generator acts as the identity
  std::string label;
};

struct ChopResult {
  std::vector<FactorClass> classes;
  std::vector<std::size_t> multiplicity;
};

// Traces of 16 fixed words.
std::vector<Fe> fingerprint(const ModuleRep& m);

// Composition factors with multiplicities. Deterministic for a given seed;
// throws BudgetExceeded when some module can neither be split nor certified.
ChopResult chop(const ModuleRep& m, std::uint64_t seed);

bool is_iso(const FactorClass& a, const FactorClass& b);
// End(S) has dimension 1.
bool abs_irred(const FactorClass& f);
// Dimension of End(S) from the full linear system X g = g X (small dims only).
std::size_t endomorphism_dim_direct(const ModuleRep& s);

}  // namespace rank3

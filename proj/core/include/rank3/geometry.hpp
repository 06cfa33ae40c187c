#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace rank3 {

enum class Family { OPlus, OMinus, Unitary };

std::string family_name(Family f);        // "o+", "o-", "u"
Family parse_family(const std::string& s);  // throws InvalidInput

struct SpaceSpec {
  Family family = Family::OPlus;
  int dim = 6;  // m

  bool orthogonal() const { return family != Family::Unitary; }
  // n with m = 2n (orthogonal, even unitary) or m = 2n + 1 (odd unitary)
  int n() const { return dim / 2; }
  bool odd_unitary() const { return family == Family::Unitary && dim % 2 == 1; }
  // Throws InvalidInput outside O(2n), n >= 3, or U(m), m >= 4.
  void validate() const;
  std::string describe() const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

// Coordinates packed two bits per slot: slots 0..n-1 are e_1..e_n, slots
// n..2n-1 are f_1..f_n and slot 2n is g for odd unitary spaces. Over GF(2)
// only the low bit of a slot is used; over GF(4) the slot holds the code
// from field.hpp.
using PackedVec = std::uint64_t;

class Space {
 public:
  explicit Space(SpaceSpec spec);

  const SpaceSpec& spec() const { return spec_; }
  int dim() const { return spec_.dim; }
  int field_order() const { return spec_.orthogonal() ? 2 : 4; }
  std::uint64_t vector_count() const { return std::uint64_t(1) << (2 * dim() - (spec_.orthogonal() ? dim() : 0)); }
  const std::vector<std::string>& labels() const { return labels_; }

  static std::uint8_t coord(PackedVec v, int i) { return std::uint8_t((v >> (2 * i)) & 3); }
  static PackedVec with_coord(PackedVec v, int i, std::uint8_t c) {
    return (v & ~(PackedVec(3) << (2 * i))) | (PackedVec(c & 3) << (2 * i));
  }
  static PackedVec basis(int i) { return PackedVec(1) << (2 * i); }
  // k-th vector in enumeration order (k < vector_count()).
  PackedVec vector_at(std::uint64_t k) const;

  // Gram entry (b_i, b_j).
  std::uint8_t gram(int i, int j) const { return gram_[i * dim() + j]; }
  // Q on a basis vector (orthogonal only).
  std::uint8_t q_basis(int i) const { return qbasis_[i]; }

  // Symmetric bilinear form (orthogonal) or hermitian form (unitary),
  // linear in the first argument.
  std::uint8_t bilinear(PackedVec u, PackedVec v) const;
  // Throws InvalidInput on unitary spaces.
  std::uint8_t quadratic(PackedVec u) const;
  bool nonsingular(PackedVec u) const;

  PackedVec add(PackedVec u, PackedVec v) const { return u ^ v; }
  PackedVec scale(PackedVec u, std::uint8_t k) const;
  // Projective representative: first nonzero coordinate scaled to 1.
  PackedVec normalize(PackedVec u) const;
  std::string format(PackedVec u) const;

 private:
  SpaceSpec spec_;
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> gram_;
  std::vector<std::uint8_t> qbasis_;
  PackedVec emask_ = 0, fmask_ = 0;
};

struct PointSets {
  std::vector<PackedVec> P;   // nonsingular points, sorted
  std::vector<PackedVec> P0;  // singular points, sorted
  std::unordered_map<PackedVec, std::uint32_t> index_P, index_P0;
  std::vector<std::vector<std::uint32_t>> delta;   // over P
  std::vector<std::vector<std::uint32_t>> phi;     // over P
  std::vector<std::vector<std::uint32_t>> lambda;  // P -> P0, orthogonal singular points
  std::vector<std::vector<std::uint32_t>> gamma;   // P0 -> P, orthogonal nonsingular points

  static constexpr std::uint32_t npos = 0xffffffffu;
  std::uint32_t find_P(PackedVec normalized) const;
  std::uint32_t find_P0(PackedVec normalized) const;
};

// Max |P| for which enumerate_points builds neighbor lists (guard).
PointSets enumerate_points(const Space& space);

struct Rank3Params {
  long long v = 0, a = 0, b = 0, r = 0, s = 0;
  friend bool operator==(const Rank3Params&, const Rank3Params&) = default;
};

struct Roots {
  long long c = 0, d = 0;  // |c| < |d|
  friend bool operator==(const Roots&, const Roots&) = default;
};

// Counts a, b, r, s and checks they do not depend on the chosen points; any
// variation throws CertificationError. When full_scan is false only the
// a-regularity and one (beta, gamma) pair per base point class are checked.
Rank3Params brute_params(const PointSets& ps, bool full_scan = true);
Rank3Params closed_params(const SpaceSpec& spec);
// Number of nonsingular and singular points by formula.
long long closed_point_count(const SpaceSpec& spec);
long long closed_singular_count(const SpaceSpec& spec);
// Integer roots of x^2 + (r - s)x + (s - a); throws CertificationError when
// they are not integers.
Roots quadratic_roots(const Rank3Params& p);
// Root pair predicted for the family.
Roots closed_roots(const SpaceSpec& spec);

}  // namespace rank3

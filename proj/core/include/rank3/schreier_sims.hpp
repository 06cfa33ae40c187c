#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <vector>

namespace rank3 {

using BigInt = boost::multiprecision::cpp_int;

// Permutation of {0..n-1} as an image array: i maps to p[i].
using Perm = std::vector<std::uint32_t>;

Perm perm_identity(std::size_t n);
// first p, then q (right action: i^(pq) = (i^p)^q)
Perm perm_compose(const Perm& p, const Perm& q);
Perm perm_inverse(const Perm& p);
bool perm_is_identity(const Perm& p);
bool perm_is_bijection(const Perm& p);

// Base and strong generating set with Schreier trees. The construction runs
// a seeded random Schreier-Sims phase and then the deterministic Schreier
// generator test, so the result is exact regardless of the random phase.
class Bsgs {
 public:
  Bsgs(std::size_t degree, std::uint64_t seed);

  // Adds a generator; returns false if it was already a member.
  bool add_generator(const Perm& g);
  bool contains(const Perm& g) const;

  std::size_t degree() const { return n_; }
  const std::vector<std::uint32_t>& base() const { return base_; }
  std::vector<std::size_t> orbit_lengths() const;
  BigInt order() const;
  const std::vector<Perm>& generators() const { return gens_; }
  std::size_t strong_generator_count() const { return strong_.size(); }

 private:
  struct Level {
    std::uint32_t point = 0;
    std::vector<std::uint32_t> gens;     // indices into strong_
    std::vector<std::int32_t> edge;      // per point: strong index used to reach it, -2 root, -1 absent
    std::vector<std::uint32_t> orbit;
  };

  void rebuild_orbit(Level& lv);
  // residue of g after sifting from level `from`; drop level returned in `fail`
  Perm sift(Perm g, std::size_t from, std::size_t& fail) const;
  // g * u_beta^{-1} where u_beta maps the level base point to beta
  void strip(Perm& g, const Level& lv, std::uint32_t beta) const;
  Perm transversal(const Level& lv, std::uint32_t beta) const;
  void add_strong(const Perm& g, std::size_t fail_level);
  void random_phase(std::size_t rounds);
  void verify_from(std::size_t level);
  std::uint32_t moved_point(const Perm& g) const;

  std::size_t n_;
  std::mt19937_64 rng_;
  std::vector<Perm> gens_;
  std::vector<Perm> strong_, strong_inv_;
  std::vector<std::uint32_t> base_;
  std::vector<Level> levels_;
};

}  // namespace rank3

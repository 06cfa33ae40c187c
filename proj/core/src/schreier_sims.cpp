#include "rank3/schreier_sims.hpp"

#include <algorithm>
#include <numeric>

#include "rank3/error.hpp"

namespace rank3 {

Perm perm_identity(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

Perm perm_compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
  return r;
}

bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

bool perm_is_bijection(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (auto x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

Bsgs::Bsgs(std::size_t degree, std::uint64_t seed) : n_(degree), rng_(seed) {}

std::uint32_t Bsgs::moved_point(const Perm& g) const {
  for (std::uint32_t i = 0; i < n_; ++i)
    if (g[i] != i) return i;
  return static_cast<std::uint32_t>(n_);
}

void Bsgs::rebuild_orbit(Level& lv) {
  lv.edge.assign(n_, -1);
  lv.orbit.clear();
  lv.edge[lv.point] = -2;
  lv.orbit.push_back(lv.point);
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    std::uint32_t x = lv.orbit[k];
    for (auto si : lv.gens) {
      std::uint32_t y = strong_[si][x];
      if (lv.edge[y] == -1) {
        lv.edge[y] = static_cast<std::int32_t>(si);
        lv.orbit.push_back(y);
      }
    }
  }
}

void Bsgs::strip(Perm& g, const Level& lv, std::uint32_t beta) const {
  while (lv.edge[beta] >= 0) {
    const Perm& sinv = strong_inv_[lv.edge[beta]];
    for (auto& x : g) x = sinv[x];
    beta = sinv[beta];
  }
}

Perm Bsgs::transversal(const Level& lv, std::uint32_t beta) const {
  // u maps the base point to beta; build u^{-1} by stripping, then invert.
  Perm g = perm_identity(n_);
  strip(g, lv, beta);
  return perm_inverse(g);
}

Perm Bsgs::sift(Perm g, std::size_t from, std::size_t& fail) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    std::uint32_t beta = g[levels_[i].point];
    if (levels_[i].edge[beta] == -1) {
      fail = i;
      return g;
    }
    strip(g, levels_[i], beta);
  }
  fail = levels_.size();
  return g;
}

bool Bsgs::contains(const Perm& g) const {
  if (g.size() != n_) return false;
  std::size_t fail = 0;
  Perm r = sift(g, 0, fail);
  return fail == levels_.size() && perm_is_identity(r);
}

void Bsgs::add_strong(const Perm& h, std::size_t fail) {
  if (fail == levels_.size()) {
    Level lv;
    lv.point = moved_point(h);
    if (lv.point == n_) throw CertificationError("Schreier-Sims: identity added as strong generator");
    base_.push_back(lv.point);
    levels_.push_back(std::move(lv));
  }
  const auto idx = static_cast<std::uint32_t>(strong_.size());
  strong_.push_back(h);
  strong_inv_.push_back(perm_inverse(h));
  for (std::size_t j = 0; j <= fail; ++j) {
    levels_[j].gens.push_back(idx);
    rebuild_orbit(levels_[j]);
  }
}

void Bsgs::random_phase(std::size_t rounds) {
  if (gens_.empty()) return;
  Perm r = perm_identity(n_);
  std::size_t quiet = 0;
  for (std::size_t it = 0; it < 50 * rounds && quiet < rounds; ++it) {
    for (int step = 0; step < 8; ++step) r = perm_compose(r, gens_[rng_() % gens_.size()]);
    std::size_t fail = 0;
    Perm h = sift(r, 0, fail);
    if (fail == levels_.size() && perm_is_identity(h)) {
      ++quiet;
    } else {
      quiet = 0;
      add_strong(h, fail);
    }
  }
}

void Bsgs::verify_from(std::size_t start) {
  std::size_t i = start;
  while (true) {
    bool restarted = false;
    Level& lv = levels_[i];
    for (std::size_t k = 0; k < lv.orbit.size() && !restarted; ++k) {
      const std::uint32_t beta = lv.orbit[k];
      Perm u = transversal(lv, beta);
      for (std::size_t gi = 0; gi < lv.gens.size() && !restarted; ++gi) {
        const auto si = lv.gens[gi];
        const std::uint32_t img = strong_[si][beta];
        if (lv.edge[img] == static_cast<std::int32_t>(si) && strong_inv_[si][img] == beta) continue;
        Perm g = perm_compose(u, strong_[si]);
        strip(g, lv, img);
        std::size_t fail = 0;
        Perm h = sift(std::move(g), i + 1, fail);
        if (fail == levels_.size() && perm_is_identity(h)) continue;
        add_strong(h, fail);
        i = std::min(fail, levels_.size() - 1);
        restarted = true;
      }
    }
    if (restarted) continue;
    if (i == 0) break;
    --i;
  }
}

bool Bsgs::add_generator(const Perm& g) {
  if (g.size() != n_ || !perm_is_bijection(g)) throw InvalidInput("Bsgs: generator is not a permutation");
  if (contains(g)) return false;
  gens_.push_back(g);
  std::size_t fail = 0;
  Perm h = sift(g, 0, fail);
  add_strong(h, fail);
  random_phase(30);
  verify_from(levels_.size() - 1);
  return true;
}

std::vector<std::size_t> Bsgs::orbit_lengths() const {
  std::vector<std::size_t> out;
  for (const auto& lv : levels_) out.push_back(lv.orbit.size());
  return out;
}

BigInt Bsgs::order() const {
  BigInt o = 1;
  for (const auto& lv : levels_) o *= lv.orbit.size();
  return o;
}

}  // namespace rank3

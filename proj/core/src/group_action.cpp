#include "rank3/group_action.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "rank3/error.hpp"
#include "rank3/field.hpp"

namespace rank3 {

PackedVec MatGen::apply(const Space& space, PackedVec x) const {
  PackedVec y = 0;
  for (int i = 0; i < space.dim(); ++i) {
    std::uint8_t c = Space::coord(x, i);
    if (c) y ^= space.scale(images[i], c);
  }
  return y;
}

int MatGen::order(const Space& space) const {
  std::vector<PackedVec> cur = images;
  for (int k = 1; k <= 4096; ++k) {
    bool id = true;
    for (int i = 0; i < space.dim() && id; ++i) id = cur[i] == Space::basis(i);
    if (id) return k;
    for (auto& v : cur) v = apply(space, v);
  }
  throw CertificationError("matrix order exceeds search bound");
}

MatGen identity_matrix(const Space& space) {
  MatGen g;
  for (int i = 0; i < space.dim(); ++i) g.images.push_back(Space::basis(i));
  g.name = "1";
  return g;
}

MatGen transvection(const Space& space, PackedVec v) {
  if (!space.spec().orthogonal() || space.quadratic(v) != 1)
    throw InvalidInput("transvection needs a vector with Q(v) = 1");
  MatGen g;
  for (int i = 0; i < space.dim(); ++i) {
    PackedVec b = Space::basis(i);
    g.images.push_back(space.bilinear(b, v) ? (b ^ v) : b);
  }
  g.name = "t(" + space.format(v) + ")";
  return g;
}

MatGen pseudo_reflection(const Space& space, PackedVec v, std::uint8_t lambda) {
  if (space.spec().orthogonal() || space.bilinear(v, v) != 1)
    throw InvalidInput("pseudo-reflection needs a unitary vector with (v,v) = 1");
  if (lambda == 0) throw InvalidInput("pseudo-reflection needs nonzero lambda");
  const std::uint8_t lm1 = gf4::add(lambda, gf4::kOne);
  MatGen g;
  for (int i = 0; i < space.dim(); ++i) {
    PackedVec b = Space::basis(i);
    std::uint8_t k = gf4::mul(lm1, space.bilinear(b, v));
    g.images.push_back(b ^ space.scale(v, k));
  }
  g.name = std::string("r(") + space.format(v) + (lambda == gf4::kTau ? ",t)" : ",t^2)");
  return g;
}

bool is_isometry(const Space& space, const MatGen& g) {
  const int m = space.dim();
  if (static_cast<int>(g.images.size()) != m) return false;
  for (int i = 0; i < m; ++i) {
    if (space.spec().orthogonal() && space.quadratic(g.images[i]) != space.q_basis(i)) return false;
    for (int j = 0; j < m; ++j)
      if (space.bilinear(g.images[i], g.images[j]) != space.gram(i, j)) return false;
  }
  return true;
}

std::vector<MatGen> reflection_pool(const Space& space) {
  const int m = space.dim();
  const bool orth = space.spec().orthogonal();
  std::vector<PackedVec> vecs;
  // supports of size 1, 2, 3 in lexicographic order; first coordinate 1
  auto consider = [&](PackedVec v) {
    if (space.normalize(v) != v) return;
    if (orth ? space.quadratic(v) == 1 : space.bilinear(v, v) == 1) vecs.push_back(v);
  };
  const std::uint8_t maxc = orth ? 1 : 3;
  for (int i = 0; i < m; ++i) consider(Space::basis(i));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (std::uint8_t cj = 1; cj <= maxc; ++cj)
        consider(Space::basis(i) | (PackedVec(cj) << (2 * j)));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        for (std::uint8_t cj = 1; cj <= maxc; ++cj)
          for (std::uint8_t ck = 1; ck <= maxc; ++ck)
            consider(Space::basis(i) | (PackedVec(cj) << (2 * j)) | (PackedVec(ck) << (2 * k)));
  std::vector<MatGen> pool;
  for (PackedVec v : vecs) {
    if (orth) {
      pool.push_back(transvection(space, v));
    } else {
      pool.push_back(pseudo_reflection(space, v, gf4::kTau));
      pool.push_back(pseudo_reflection(space, v, gf4::kTau2));
    }
  }
  for (const auto& g : pool)
    if (!is_isometry(space, g)) throw CertificationError("pool element " + g.name + " is not an isometry");
  return pool;
}

PermPair induced_perm(const Space& space, const PointSets& ps, const MatGen& g) {
  PermPair pp;
  pp.on_P.resize(ps.P.size());
  pp.on_P0.resize(ps.P0.size());
  for (std::size_t i = 0; i < ps.P.size(); ++i) {
    auto j = ps.find_P(space.normalize(g.apply(space, ps.P[i])));
    if (j == PointSets::npos) throw CertificationError(g.name + " maps a nonsingular point outside P");
    pp.on_P[i] = j;
  }
  for (std::size_t i = 0; i < ps.P0.size(); ++i) {
    auto j = ps.find_P0(space.normalize(g.apply(space, ps.P0[i])));
    if (j == PointSets::npos) throw CertificationError(g.name + " maps a singular point outside P0");
    pp.on_P0[i] = j;
  }
  if (!perm_is_bijection(pp.on_P) || !perm_is_bijection(pp.on_P0))
    throw CertificationError(g.name + " does not permute the points");
  return pp;
}

BigInt group_order(const std::vector<Perm>& perms, std::uint64_t seed) {
  if (perms.empty()) throw InvalidInput("group_order: no generators");
  Bsgs b(perms.front().size(), seed);
  for (const auto& p : perms) b.add_generator(p);
  return b.order();
}

BigInt formula_order(const SpaceSpec& spec) {
  spec.validate();
  BigInt o = 1;
  if (spec.orthogonal()) {
    const int n = spec.n();
    const long long eps = spec.family == Family::OPlus ? 1 : -1;
    o = 2;
    o <<= n * (n - 1);
    o *= (BigInt(1) << n) - eps;
    for (int i = 1; i < n; ++i) o *= (BigInt(1) << (2 * i)) - 1;
  } else {
    const int m = spec.dim;
    o <<= m * (m - 1) / 2;
    for (int i = 1; i <= m; ++i) o *= (BigInt(1) << i) - (i % 2 == 0 ? 1 : -1);
  }
  return o;
}

namespace {

// Domain on which the isometry group acts faithfully: the points themselves
// over GF(2), all nonsingular vectors over GF(4).
struct FaithfulDomain {
  std::vector<PackedVec> elems;
  std::unordered_map<PackedVec, std::uint32_t> index;

  Perm perm(const Space& space, const MatGen& g) const {
    Perm p(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      auto it = index.find(g.apply(space, elems[i]));
      if (it == index.end()) throw CertificationError(g.name + " leaves the nonsingular vectors");
      p[i] = it->second;
    }
    return p;
  }
};

FaithfulDomain faithful_domain(const Space& space, const PointSets& ps) {
  FaithfulDomain d;
  if (space.spec().orthogonal()) {
    d.elems = ps.P;
  } else {
    for (PackedVec x : ps.P)
      for (std::uint8_t k = 1; k <= 3; ++k) d.elems.push_back(space.scale(x, k));
    std::sort(d.elems.begin(), d.elems.end());
  }
  for (std::uint32_t i = 0; i < d.elems.size(); ++i) d.index.emplace(d.elems[i], i);
  return d;
}

}  // namespace

GroupInfo build_group(const Space& space, const PointSets& ps, std::uint64_t seed) {
  GroupInfo info;
  info.formula = formula_order(space.spec());
  std::vector<MatGen> pool = reflection_pool(space);
  info.pool_size = pool.size();
  FaithfulDomain dom = faithful_domain(space, ps);

  // greedy pass: keep every pool element that enlarges the group
  std::vector<std::size_t> chosen;
  std::vector<Perm> chosen_perms;
  {
    Bsgs b(dom.elems.size(), seed);
    for (std::size_t k = 0; k < pool.size(); ++k) {
      Perm p = dom.perm(space, pool[k]);
      if (b.add_generator(p)) {
        chosen.push_back(k);
        chosen_perms.push_back(std::move(p));
        // the full isometry group cannot grow further
        if (b.order() == info.formula) break;
      }
    }
  }
  // redundancy pass: drop generators the others already generate
  for (std::size_t k = chosen.size(); k-- > 0 && chosen.size() > 1;) {
    Bsgs b(dom.elems.size(), seed);
    for (std::size_t j = 0; j < chosen.size(); ++j)
      if (j != k) b.add_generator(chosen_perms[j]);
    if (b.contains(chosen_perms[k])) {
      chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(k));
      chosen_perms.erase(chosen_perms.begin() + static_cast<std::ptrdiff_t>(k));
    }
  }

  Bsgs full(dom.elems.size(), seed);
  for (const auto& p : chosen_perms) full.add_generator(p);
  info.order = full.order();
  info.base = full.base();
  info.orbit_lengths = full.orbit_lengths();
  info.certified = info.order == info.formula;

  for (std::size_t k : chosen) {
    info.gens.push_back(pool[k]);
    info.perms.push_back(induced_perm(space, ps, pool[k]));
  }
  if (space.spec().orthogonal()) {
    info.order_on_points = info.order;
  } else {
    std::vector<Perm> on_p;
    for (const auto& pp : info.perms) on_p.push_back(pp.on_P);
    info.order_on_points = group_order(on_p, seed);
  }
  return info;
}

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Orbitals rank_and_orbitals(const std::vector<Perm>& perms, const PointSets& ps, std::uint32_t base) {
  Orbitals out;
  const std::size_t v = ps.P.size();
  if (v == 0 || base >= v) throw InvalidInput("rank_and_orbitals: bad base point");
  // transitivity
  std::vector<char> seen(v, 0);
  std::vector<std::uint32_t> queue{base};
  seen[base] = 1;
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& g : perms)
      if (!seen[g[queue[k]]]) {
        seen[g[queue[k]]] = 1;
        queue.push_back(g[queue[k]]);
      }
  out.transitive = queue.size() == v;

  // orbitals as orbits on ordered pairs
  UnionFind uf(v * v);
  for (const auto& g : perms)
    for (std::uint32_t i = 0; i < v; ++i)
      for (std::uint32_t j = 0; j < v; ++j) uf.unite(i * v + j, g[i] * v + g[j]);
  int rank = 0;
  for (std::uint32_t x = 0; x < v * v; ++x)
    if (uf.find(x) == x) ++rank;
  out.rank = rank;

  std::unordered_map<std::uint32_t, std::size_t> sizes;
  for (std::uint32_t j = 0; j < v; ++j) ++sizes[uf.find(base * v + j)];
  for (const auto& [k, s] : sizes) out.suborbits.push_back(s);
  std::sort(out.suborbits.begin(), out.suborbits.end());

  // each orbital must be exactly one of the relations {=, Delta, Phi}
  std::vector<char> in_delta(v * v, 0);
  for (std::uint32_t i = 0; i < v; ++i)
    for (auto j : ps.delta[i]) in_delta[i * v + j] = 1;
  std::unordered_map<std::uint32_t, int> kind_of;
  bool ok = true;
  for (std::uint32_t i = 0; i < v && ok; ++i)
    for (std::uint32_t j = 0; j < v && ok; ++j) {
      int kind = i == j ? 0 : (in_delta[i * v + j] ? 1 : 2);
      auto [it, fresh] = kind_of.emplace(uf.find(i * v + j), kind);
      if (!fresh && it->second != kind) ok = false;
    }
  out.matches_geometry = ok && kind_of.size() == 3;
  return out;
}

}  // namespace rank3

#include "rank3/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "rank3/error.hpp"
#include "rank3/field.hpp"

namespace rank3 {

namespace {

long long p2(int k) {
  if (k < 0 || k > 62) throw InvalidInput("power of two out of range");
  return 1LL << k;
}

long long exact_div3(long long x) {
  if (x % 3 != 0) throw CertificationError("closed formula is not divisible by 3");
  return x / 3;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::OPlus: return "o+";
    case Family::OMinus: return "o-";
    case Family::Unitary: return "u";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "o+" || s == "oplus" || s == "O+") return Family::OPlus;
  if (s == "o-" || s == "ominus" || s == "O-") return Family::OMinus;
  if (s == "u" || s == "unitary" || s == "U") return Family::Unitary;
  throw InvalidInput("unknown family '" + s + "' (expected o+, o- or u)");
}

void SpaceSpec::validate() const {
  if (orthogonal()) {
    if (dim % 2 != 0) throw InvalidInput("orthogonal spaces need even dimension");
    if (dim < 6) throw InvalidInput("orthogonal spaces need n >= 3 (dimension >= 6)");
  } else if (dim < 4) {
    throw InvalidInput("unitary spaces need dimension >= 4");
  }
  if (dim > 31) throw InvalidInput("dimension too large for packed vectors");
}

std::string SpaceSpec::describe() const {
  switch (family) {
    case Family::OPlus: return "O+(" + std::to_string(dim) + ",2)";
    case Family::OMinus: return "O-(" + std::to_string(dim) + ",2)";
    case Family::Unitary: return "U(" + std::to_string(dim) + ",2)";
  }
  return "?";
}

Space::Space(SpaceSpec spec) : spec_(spec) {
  spec_.validate();
  const int m = dim(), n = spec_.n();
  for (int i = 1; i <= n; ++i) labels_.push_back("e" + std::to_string(i));
  for (int i = 1; i <= n; ++i) labels_.push_back("f" + std::to_string(i));
  if (spec_.odd_unitary()) labels_.push_back("g");
  gram_.assign(m * m, 0);
  for (int i = 0; i < n; ++i) {
    gram_[i * m + (n + i)] = 1;
    gram_[(n + i) * m + i] = 1;
  }
  if (spec_.odd_unitary()) gram_[(m - 1) * m + (m - 1)] = 1;
  qbasis_.assign(m, 0);
  if (spec_.family == Family::OMinus) {
    qbasis_[n - 1] = 1;
    qbasis_[2 * n - 1] = 1;
  }
  for (int i = 0; i < n; ++i) {
    emask_ |= PackedVec(3) << (2 * i);
    fmask_ |= PackedVec(3) << (2 * (n + i));
  }
}

PackedVec Space::vector_at(std::uint64_t k) const {
  if (!spec_.orthogonal()) return k;
  PackedVec v = 0;
  for (int i = 0; i < dim(); ++i)
    if ((k >> i) & 1) v |= basis(i);
  return v;
}

std::uint8_t Space::bilinear(PackedVec u, PackedVec v) const {
  const int n = spec_.n();
  if (spec_.orthogonal()) {
    // sum u_e v_f + u_f v_e over GF(2)
    PackedVec vs = ((v & fmask_) >> (2 * n)) | ((v & emask_) << (2 * n));
    return std::uint8_t(std::popcount(u & vs) & 1);
  }
  std::uint8_t s = 0;
  for (int i = 0; i < n; ++i) {
    s ^= gf4::mul(coord(u, i), gf4::conj(coord(v, n + i)));
    s ^= gf4::mul(coord(u, n + i), gf4::conj(coord(v, i)));
  }
  if (spec_.odd_unitary()) s ^= gf4::mul(coord(u, 2 * n), gf4::conj(coord(v, 2 * n)));
  return s;
}

std::uint8_t Space::quadratic(PackedVec u) const {
  if (!spec_.orthogonal()) throw InvalidInput("quadratic form requested on a unitary space");
  const int n = spec_.n();
  std::uint8_t q = std::uint8_t(std::popcount(u & ((u & fmask_) >> (2 * n))) & 1);
  if (spec_.family == Family::OMinus) q ^= coord(u, n - 1) ^ coord(u, 2 * n - 1);
  return q & 1;
}

bool Space::nonsingular(PackedVec u) const {
  return spec_.orthogonal() ? quadratic(u) != 0 : bilinear(u, u) != 0;
}

PackedVec Space::scale(PackedVec u, std::uint8_t k) const {
  if (spec_.orthogonal()) return (k & 1) ? u : 0;
  PackedVec r = 0;
  for (int i = 0; i < dim(); ++i) r |= PackedVec(gf4::mul(coord(u, i), k)) << (2 * i);
  return r;
}

PackedVec Space::normalize(PackedVec u) const {
  if (u == 0) throw InvalidInput("zero vector has no projective point");
  if (spec_.orthogonal()) return u;
  int i = std::countr_zero(u) / 2;
  return scale(u, gf4::inv(coord(u, i)));
}

std::string Space::format(PackedVec u) const {
  static const char* names[4] = {"0", "1", "t", "t^2"};
  std::string s;
  for (int i = 0; i < dim(); ++i) {
    std::uint8_t c = coord(u, i);
    if (!c) continue;
    if (!s.empty()) s += "+";
    if (c != 1) s += std::string(names[c]) + "*";
    s += labels_[i];
  }
  return s.empty() ? "0" : s;
}

std::uint32_t PointSets::find_P(PackedVec x) const {
  auto it = index_P.find(x);
  return it == index_P.end() ? npos : it->second;
}

std::uint32_t PointSets::find_P0(PackedVec x) const {
  auto it = index_P0.find(x);
  return it == index_P0.end() ? npos : it->second;
}

PointSets enumerate_points(const Space& space) {
  PointSets ps;
  const std::uint64_t total = space.vector_count();
  for (std::uint64_t k = 1; k < total; ++k) {
    PackedVec v = space.vector_at(k);
    if (space.normalize(v) != v) continue;
    (space.nonsingular(v) ? ps.P : ps.P0).push_back(v);
  }
  std::sort(ps.P.begin(), ps.P.end());
  std::sort(ps.P0.begin(), ps.P0.end());
  for (std::uint32_t i = 0; i < ps.P.size(); ++i) ps.index_P.emplace(ps.P[i], i);
  for (std::uint32_t i = 0; i < ps.P0.size(); ++i) ps.index_P0.emplace(ps.P0[i], i);

  const bool orth = space.spec().orthogonal();
  const std::size_t v = ps.P.size();
  ps.delta.assign(v, {});
  ps.phi.assign(v, {});
  for (std::uint32_t i = 0; i < v; ++i) {
    for (std::uint32_t j = 0; j < v; ++j) {
      if (i == j) continue;
      bool perp = space.bilinear(ps.P[i], ps.P[j]) == 0;
      // orthogonal families: Delta = non-orthogonal; unitary: Delta = orthogonal
      bool in_delta = orth ? !perp : perp;
      (in_delta ? ps.delta : ps.phi)[i].push_back(j);
    }
  }
  ps.lambda.assign(v, {});
  ps.gamma.assign(ps.P0.size(), {});
  for (std::uint32_t i = 0; i < v; ++i)
    for (std::uint32_t j = 0; j < ps.P0.size(); ++j)
      if (space.bilinear(ps.P[i], ps.P0[j]) == 0) {
        ps.lambda[i].push_back(j);
        ps.gamma[j].push_back(i);
      }
  return ps;
}

Rank3Params brute_params(const PointSets& ps, bool full_scan) {
  Rank3Params p;
  const std::size_t v = ps.P.size();
  if (v < 3) throw CertificationError("too few nonsingular points");
  p.v = static_cast<long long>(v);
  p.a = static_cast<long long>(ps.delta[0].size());
  p.b = p.v - p.a - 1;
  for (std::size_t i = 0; i < v; ++i)
    if (static_cast<long long>(ps.delta[i].size()) != p.a)
      throw CertificationError("adjacency is not regular");

  const std::size_t words = (v + 63) / 64;
  std::vector<std::uint64_t> bits(v * words, 0);
  for (std::size_t i = 0; i < v; ++i)
    for (auto j : ps.delta[i]) bits[i * words + j / 64] |= std::uint64_t(1) << (j % 64);
  auto adjacent = [&](std::size_t i, std::size_t j) {
    return (bits[i * words + j / 64] >> (j % 64)) & 1;
  };
  auto common = [&](std::size_t i, std::size_t j) {
    long long c = 0;
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(bits[i * words + w] & bits[j * words + w]);
    return c;
  };

  p.r = common(0, ps.delta[0].front());
  p.s = common(0, ps.phi[0].front());
  const std::size_t rows = full_scan ? v : 1;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = i + 1; j < v; ++j) {
      bool adj = adjacent(i, j);
      if (adj != bool(adjacent(j, i))) throw CertificationError("adjacency is not symmetric");
      long long c = common(i, j);
      if (c != (adj ? p.r : p.s))
        throw CertificationError("common-neighbour count depends on the pair; not rank 3");
    }
  }
  return p;
}

Rank3Params closed_params(const SpaceSpec& spec) {
  spec.validate();
  const int n = spec.n();
  Rank3Params p;
  switch (spec.family) {
    case Family::OPlus:
      p.v = p2(2 * n - 1) - p2(n - 1);
      p.a = p2(2 * n - 2) - p2(n - 1);
      p.b = p2(2 * n - 2) - 1;
      p.r = p2(2 * n - 3) - p2(n - 2);
      p.s = p2(2 * n - 3) - p2(n - 1);
      break;
    case Family::OMinus:
      p.v = p2(2 * n - 1) + p2(n - 1);
      p.a = p2(2 * n - 2) + p2(n - 1);
      p.b = p2(2 * n - 2) - 1;
      p.r = p2(2 * n - 3) + p2(n - 2);
      p.s = p2(2 * n - 3) + p2(n - 1);
      break;
    case Family::Unitary:
      if (spec.dim % 2 == 0) {
        p.v = exact_div3(p2(4 * n - 1) - p2(2 * n - 1));
        p.a = exact_div3(p2(4 * n - 3) + p2(2 * n - 2));
        p.b = p2(4 * n - 3) - p2(2 * n - 2) - 1;
        p.r = exact_div3(p2(4 * n - 5) - p2(2 * n - 3));
        p.s = exact_div3(p2(4 * n - 5) + p2(2 * n - 2));
      } else {
        p.v = exact_div3(p2(4 * n + 1) + p2(2 * n));
        p.a = exact_div3(p2(4 * n - 1) - p2(2 * n - 1));
        p.b = p2(4 * n - 1) + p2(2 * n - 1) - 1;
        p.r = exact_div3(p2(4 * n - 3) + p2(2 * n - 2));
        p.s = exact_div3(p2(4 * n - 3) - p2(2 * n - 1));
      }
      break;
  }
  return p;
}

long long closed_point_count(const SpaceSpec& spec) { return closed_params(spec).v; }

long long closed_singular_count(const SpaceSpec& spec) {
  spec.validate();
  const int n = spec.n(), m = spec.dim;
  switch (spec.family) {
    case Family::OPlus: return (p2(n) - 1) * (p2(n - 1) + 1);
    case Family::OMinus: return (p2(n) + 1) * (p2(n - 1) - 1);
    case Family::Unitary: {
      long long sign = (m % 2 == 0) ? 1 : -1;
      return exact_div3((p2(m) - sign) * (p2(m - 1) + sign));
    }
  }
  return 0;
}

Roots quadratic_roots(const Rank3Params& p) {
  // x^2 + (r - s)x + (s - a)
  const long long B = p.r - p.s, C = p.s - p.a;
  const long long disc = B * B - 4 * C;
  if (disc < 0) throw CertificationError("quadratic has no real roots");
  long long sq = static_cast<long long>(std::llround(std::sqrt(static_cast<long double>(disc))));
  while (sq * sq > disc) --sq;
  while ((sq + 1) * (sq + 1) <= disc) ++sq;
  if (sq * sq != disc || (B + sq) % 2 != 0) throw CertificationError("quadratic roots are not integers");
  long long x1 = (-B + sq) / 2, x2 = (-B - sq) / 2;
  if (std::llabs(x1) > std::llabs(x2)) std::swap(x1, x2);
  return {x1, x2};
}

Roots closed_roots(const SpaceSpec& spec) {
  spec.validate();
  const int n = spec.n();
  switch (spec.family) {
    case Family::OPlus: return {p2(n - 2), -p2(n - 1)};
    case Family::OMinus: return {-p2(n - 2), p2(n - 1)};
    case Family::Unitary:
      if (spec.dim % 2 == 0) return {-p2(2 * n - 3), p2(2 * n - 2)};
      return {p2(2 * n - 2), -p2(2 * n - 1)};
  }
  return {};
}

}  // namespace rank3

#include "rank3/perm_module.hpp"

#include <functional>

#include "rank3/error.hpp"

namespace rank3 {

namespace {

std::vector<Generator> gens_of(const std::vector<PermPair>& perms, bool singular) {
  std::vector<Generator> out;
  out.reserve(perms.size());
  for (const auto& pp : perms) out.emplace_back(singular ? pp.on_P0 : pp.on_P);
  return out;
}

// out[j] += u[i] for every j in nbr[i]
Vec push_forward(const PrimeField& f, std::span<const Fe> u,
                 const std::vector<std::vector<std::uint32_t>>& nbr, std::size_t width) {
  std::vector<std::uint32_t> acc(width, 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::uint32_t j : nbr[i]) acc[j] += u[i];
  }
  Vec out(width);
  for (std::size_t j = 0; j < width; ++j) out[j] = Fe(f.mod32(acc[j]));
  return out;
}

Subspace image_of(const PrimeField& f, const Subspace& s, std::size_t width,
                  const std::function<Vec(std::span<const Fe>)>& map) {
  Matrix rows(0, width);
  for (std::size_t i = 0; i < s.dim(); ++i) rows.append_row(map(s.basis().row(i)));
  return Subspace::span(f, rows);
}

}  // namespace

PermModule::PermModule(const PrimeField& f, const PointSets& ps, const std::vector<PermPair>& perms)
    : f_(f),
      ps_(&ps),
      mP_(f, ps.P.size(), gens_of(perms, false)),
      mP0_(f, ps.P0.size(), gens_of(perms, true)) {}

Vec PermModule::delta_sum(std::uint32_t alpha) const {
  if (alpha >= v()) throw InvalidInput("delta_sum: point index out of range");
  Vec out(v(), 0);
  for (std::uint32_t b : ps_->delta[alpha]) out[b] = 1;
  return out;
}

Vec PermModule::apply_T(std::span<const Fe> u) const {
  if (u.size() != v()) throw InvalidInput("apply_T: vector length mismatch");
  // Delta is symmetric, so pushing along Delta is multiplication by A.
  return push_forward(f_, u, ps_->delta, v());
}

Vec PermModule::v_c(long long c, std::uint32_t alpha) const {
  Vec out = delta_sum(alpha);
  out[alpha] = f_.reduce(c);
  return out;
}

Subspace PermModule::graph_submodule(long long c) const {
  const std::size_t n = v();
  Matrix seeds(0, n);
  if (n > 1) {
    seeds.reserve_rows(n - 1);
    const Vec base = v_c(c, 0);
    for (std::uint32_t b = 1; b < n; ++b) {
      Vec row = base;
      const Vec vb = v_c(c, b);
      for (std::size_t j = 0; j < n; ++j) row[j] = f_.sub(row[j], vb[j]);
      seeds.append_row(row);
    }
  }
  return spin(mP_, seeds);
}

Subspace PermModule::u_c(long long c) const {
  const std::size_t n = v();
  Matrix seeds(0, n);
  seeds.reserve_rows(n);
  for (std::uint32_t a = 0; a < n; ++a) seeds.append_row(v_c(c, a));
  return spin(mP_, seeds);
}

namespace {

Subspace augmentation(const PrimeField& f, std::size_t n) {
  Matrix rows(0, n);
  for (std::size_t i = 1; i < n; ++i) {
    Vec r(n, 0);
    r[0] = 1;
    r[i] = f.neg(1);
    rows.append_row(r);
  }
  return Subspace::span(f, rows);
}

Subspace all_ones(const PrimeField& f, std::size_t n) {
  Matrix rows(0, n);
  rows.append_row(Vec(n, 1));
  return Subspace::span(f, rows);
}

}  // namespace

Subspace PermModule::S() const { return augmentation(f_, v()); }
Subspace PermModule::T() const { return all_ones(f_, v()); }
Subspace PermModule::S0() const { return augmentation(f_, ps_->P0.size()); }
Subspace PermModule::T0() const { return all_ones(f_, ps_->P0.size()); }

Vec PermModule::q_apply(std::span<const Fe> u) const {
  if (u.size() != v()) throw InvalidInput("q_apply: expects a vector over P");
  return push_forward(f_, u, ps_->lambda, ps_->P0.size());
}

Vec PermModule::r_apply(std::span<const Fe> u) const {
  if (u.size() != ps_->P0.size()) throw InvalidInput("r_apply: expects a vector over P0");
  return push_forward(f_, u, ps_->gamma, v());
}

Subspace PermModule::image_Q(const Subspace& s) const {
  return image_of(f_, s, ps_->P0.size(), [this](std::span<const Fe> u) { return q_apply(u); });
}

Subspace PermModule::image_R(const Subspace& s) const {
  return image_of(f_, s, v(), [this](std::span<const Fe> u) { return r_apply(u); });
}

Matrix PermModule::adjacency() const {
  Matrix a(v(), v());
  for (std::uint32_t i = 0; i < v(); ++i)
    for (std::uint32_t j : ps_->delta[i]) a(i, j) = 1;
  return a;
}

Fe inner(const PrimeField& f, std::span<const Fe> u, std::span<const Fe> v) { return dot(f, u, v); }

bool adjacency_identity_holds(const PermModule& pm, const Rank3Params& p) {
  const PrimeField& f = pm.field();
  const Matrix a = pm.adjacency();
  const Matrix a2 = multiply(f, a, a);
  const Fe k1 = f.reduce(p.r - p.s), k0 = f.reduce(p.a - p.s), s = f.reduce(p.s);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Fe lhs = f.sub(a2(i, j), f.mul(k1, a(i, j)));
      if (i == j) lhs = f.sub(lhs, k0);
      if (lhs != s) return false;
    }
  }
  return true;
}

}  // namespace rank3

#include "rank3/structure.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "rank3/error.hpp"

namespace rank3 {

std::size_t Lattice::find(const Subspace& s) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == s) return i;
  return npos;
}

std::vector<std::vector<char>> Lattice::order() const {
  const std::size_t k = nodes.size();
  std::vector<std::vector<char>> leq(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i) leq[i][i] = 1;
  for (const auto& e : edges) leq[e.from][e.to] = 1;
  // nodes are sorted by dimension, so one Warshall pass suffices
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      if (leq[i][m])
        for (std::size_t j = 0; j < k; ++j)
          if (leq[m][j]) leq[i][j] = 1;
  return leq;
}

StructureAnalyzer::StructureAnalyzer(ModuleRep m, std::uint64_t seed)
    : m_(std::move(m)), chop_(chop(m_, seed)) {
  find_peaks(seed);
}

std::size_t StructureAnalyzer::composition_length() const {
  return std::accumulate(chop_.multiplicity.begin(), chop_.multiplicity.end(), std::size_t(0));
}

void StructureAnalyzer::find_peaks(std::uint64_t seed) {
  const PrimeField& f = m_.field();
  const std::size_t nc = chop_.classes.size();
  peaks_.assign(nc, {});
  std::vector<char> have(nc, 0), fallback(nc, 0);
  std::mt19937_64 rng(seed ^ 0xa0761d6478bd642fULL);
  std::size_t missing = nc;
  for (int attempt = 0; attempt < 600 && missing > 0; ++attempt) {
    AlgebraElement a = AlgebraElement::random(m_.num_gens(), rng, f.modulus(), 3, 6);
    std::vector<Poly> chi(nc);
    for (std::size_t t = 0; t < nc; ++t) chi[t] = charpoly(f, evaluate_sum(*chop_.classes[t].rep, a));
    for (std::size_t s = 0; s < nc; ++s) {
      if (have[s]) continue;
      for (std::uint32_t lam = 0; lam < f.modulus(); ++lam) {
        const Fe l = static_cast<Fe>(lam);
        if (poly::eval(f, chi[s], l) != 0) continue;
        // simple root only
        Poly q = poly::div_exact(f, chi[s], Poly{f.neg(l), 1});
        if (poly::eval(f, q, l) == 0) continue;
        bool sep = true;
        for (std::size_t t = 0; t < nc && sep; ++t)
          if (t != s && poly::eval(f, chi[t], l) == 0) sep = false;
        if (!sep && fallback[s]) continue;
        AlgebraElement theta = a;
        theta.poly = {f.neg(l), 1};
        peaks_[s].theta = std::move(theta);
        peaks_[s].separating = sep;
        fallback[s] = 1;
        if (sep) {
          have[s] = 1;
          --missing;
          break;
        }
      }
    }
  }
  // after the budget, a non-separating element of nullity 1 is still correct,
  // only slower; no element at all is a failure
  for (std::size_t s = 0; s < nc; ++s)
    if (!fallback[s]) throw BudgetExceeded("no kernel-vector element found for a factor of dimension " +
                                           std::to_string(chop_.classes[s].dim));
  theta_m_.clear();
  for (std::size_t s = 0; s < nc; ++s) {
    const ModuleRep& rep = *chop_.classes[s].rep;
    Matrix ker = left_nullspace(f, evaluate(rep, peaks_[s].theta));
    if (ker.rows() != 1) throw CertificationError("peak element does not have nullity 1");
    peaks_[s].sb = standard_basis(rep, ker.row(0));
    theta_m_.push_back(evaluate(m_, peaks_[s].theta));
  }
}

std::vector<std::vector<Matrix>> StructureAnalyzer::socle_homs(const Subspace& below, const ModuleRep& q,
                                                               const std::vector<char>& skip) const {
  const PrimeField& f = m_.field();
  std::vector<std::vector<Matrix>> out(chop_.classes.size());
  if (q.dim() == 0) return out;
  for (std::size_t s = 0; s < chop_.classes.size(); ++s) {
    if (!skip.empty() && skip[s]) continue;
    Matrix theta_q = induced_on_quotient(f, theta_m_[s], below);
    Matrix ker = left_nullspace(f, theta_q);
    if (ker.rows() == 0) continue;
    out[s] = hom_space(peaks_[s].sb, q, ker);
  }
  return out;
}

namespace {

Subspace extend(const PrimeField& f, const Subspace& base, const Matrix& lifted) {
  Echelon e(f, base.ambient());
  for (std::size_t i = 0; i < base.dim(); ++i) e.insert(base.basis().row(i));
  for (std::size_t i = 0; i < lifted.rows(); ++i) e.insert(lifted.row(i));
  return Subspace::from_echelon(e);
}

}  // namespace

Subspace StructureAnalyzer::socle(const Subspace& below, std::vector<std::size_t>* mult) const {
  ModuleRep q = quotient_rep(m_, below);
  auto homs = socle_homs(below, q);
  Matrix all(0, 0);
  all.set_cols(q.dim());
  if (mult) mult->assign(homs.size(), 0);
  for (std::size_t s = 0; s < homs.size(); ++s) {
    if (mult) (*mult)[s] = homs[s].size();
    for (const auto& h : homs[s])
      for (std::size_t i = 0; i < h.rows(); ++i) all.append_row(h.row(i));
  }
  return extend(m_.field(), below, lift_rows(below, all));
}

SocleSeries StructureAnalyzer::socle_series() const {
  SocleSeries out;
  Subspace cur(m_.dim());
  while (cur.dim() < m_.dim()) {
    std::vector<std::size_t> mult;
    Subspace next = socle(cur, &mult);
    if (next.dim() == cur.dim()) throw CertificationError("socle of a nonzero quotient is zero");
    out.terms.push_back(next);
    out.layers.push_back(std::move(mult));
    cur = std::move(next);
  }
  return out;
}

Lattice StructureAnalyzer::lattice(std::size_t length_bound, std::size_t node_budget) const {
  const PrimeField& f = m_.field();
  const std::uint32_t p = f.modulus();
  if (composition_length() > length_bound)
    throw InvalidInput("composition length " + std::to_string(composition_length()) +
                       " exceeds the lattice length bound " + std::to_string(length_bound));
  const std::size_t nc = chop_.classes.size();
  std::vector<Subspace> nodes{Subspace(m_.dim())};
  std::vector<std::vector<std::size_t>> remaining{chop_.multiplicity};
  std::unordered_map<Subspace, std::size_t, SubspaceHash> index{{nodes[0], 0}};
  std::vector<LatticeEdge> edges;

  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const Subspace below = nodes[id];
    if (below.dim() == m_.dim()) continue;
    ModuleRep q = quotient_rep(m_, below);
    std::vector<char> skip(nc, 0);
    for (std::size_t s = 0; s < nc; ++s) skip[s] = remaining[id][s] == 0;
    auto homs = socle_homs(below, q, skip);
    for (std::size_t s = 0; s < nc; ++s) {
      const std::size_t k = homs[s].size();
      if (k == 0) continue;
      if (k > 3) throw BudgetExceeded("homogeneous socle multiplicity " + std::to_string(k) + " exceeds 3");
      // projective points of F^k: first nonzero coordinate 1
      std::vector<Fe> x(k, 0);
      std::size_t total = 1;
      for (std::size_t i = 0; i < k; ++i) total *= p;
      for (std::size_t code = 1; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < k; ++i) {
          x[i] = static_cast<Fe>(c % p);
          c /= p;
        }
        auto first = std::find_if(x.begin(), x.end(), [](Fe v) { return v != 0; });
        if (*first != 1) continue;
        Matrix img(homs[s][0].rows(), homs[s][0].cols());
        Accumulator acc(f, img.flat().size());
        acc.clear();
        for (std::size_t i = 0; i < k; ++i)
          if (x[i]) acc.axpy(x[i], homs[s][i].flat());
        acc.store(img.flat());
        Subspace up = extend(f, below, lift_rows(below, img));
        auto it = index.find(up);
        std::size_t to;
        if (it == index.end()) {
          to = nodes.size();
          nodes.push_back(up);
          index.emplace(up, to);
          auto rem = remaining[id];
          --rem[s];
          remaining.push_back(std::move(rem));
          if (nodes.size() > node_budget)
            throw BudgetExceeded("submodule lattice exceeds " + std::to_string(node_budget) +
                                 " nodes; lower the length bound or the instance size");
        } else {
          to = it->second;
        }
        edges.push_back({id, to, s});
      }
    }
  }

  // canonical order: dimension, then basis bytes
  std::vector<std::size_t> perm(nodes.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (nodes[a].dim() != nodes[b].dim()) return nodes[a].dim() < nodes[b].dim();
    return nodes[a].basis().data() < nodes[b].basis().data();
  });
  std::vector<std::size_t> where(nodes.size());
  Lattice out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    where[perm[i]] = i;
    out.nodes.push_back(nodes[perm[i]]);
  }
  for (auto e : edges) out.edges.push_back({where[e.from], where[e.to], e.cls});
  std::sort(out.edges.begin(), out.edges.end(), [](const LatticeEdge& a, const LatticeEdge& b) {
    return std::tie(a.from, a.to, a.cls) < std::tie(b.from, b.to, b.cls);
  });
  return out;
}

}  // namespace rank3

#include "rank3/meataxe.hpp"

#include <algorithm>

#include "rank3/error.hpp"

namespace rank3 {

Poly charpoly(const PrimeField& f, const Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InvalidInput("charpoly: matrix not square");
  const std::uint32_t p = f.modulus();
  Echelon done(f, n);
  Poly result{1};
  Accumulator acc(f, n);
  Vec w(n), r(n);
  for (std::size_t start = 0; start < n && done.rank() < n; ++start) {
    std::fill(w.begin(), w.end(), 0);
    w[start] = 1;
    if (done.contains(w)) continue;
    // Krylov block modulo the invariant subspace found so far
    std::vector<Vec> rows, expr;
    std::vector<std::uint32_t> piv;
    while (true) {
      const std::size_t k = rows.size();
      std::copy(w.begin(), w.end(), r.begin());
      done.reduce(r);
      acc.load(r);
      Vec e(k + 1, 0);
      e[k] = 1;
      for (std::size_t j = 0; j < k; ++j) {
        Fe c = acc.at(piv[j]);
        if (!c) continue;
        acc.axpy(p - c, rows[j]);
        for (std::size_t i = 0; i < expr[j].size(); ++i) e[i] = f.sub(e[i], f.mul(c, expr[j][i]));
      }
      acc.store(r);
      auto lead = std::find_if(r.begin(), r.end(), [](Fe x) { return x != 0; });
      if (lead == r.end()) {
        // e(A) kills the start vector modulo the earlier blocks; e is monic
        result = poly::mul(f, result, e);
        break;
      }
      Fe inv = f.inv(*lead);
      for (auto& x : r) x = f.mul(x, inv);
      for (auto& x : e) x = f.mul(x, inv);
      piv.push_back(static_cast<std::uint32_t>(lead - r.begin()));
      rows.push_back(r);
      expr.push_back(e);
      w = vec_mul(f, w, a);
    }
    for (auto& row : rows) done.insert(row);
  }
  return result;
}

StandardBasis standard_basis(const ModuleRep& s, std::span<const Fe> seed) {
  const PrimeField& f = s.field();
  StandardBasis sb;
  sb.dim = s.dim();
  sb.seed.assign(seed.begin(), seed.end());
  Echelon e(f, s.dim());
  Matrix b(0, 0);
  b.set_cols(s.dim());
  if (!e.insert(seed)) throw CertificationError("standard_basis: zero seed");
  b.append_row(seed);
  for (std::size_t k = 0; k < b.rows() && b.rows() < s.dim(); ++k) {
    for (std::size_t g = 0; g < s.num_gens() && b.rows() < s.dim(); ++g) {
      Vec y = s.apply(g, b.row(k));
      if (e.insert(y)) {
        b.append_row(y);
        sb.steps.emplace_back(static_cast<std::uint32_t>(k), static_cast<std::uint16_t>(g));
      }
    }
  }
  if (b.rows() != s.dim()) throw CertificationError("standard_basis: seed does not generate the module");
  Matrix binv = inverse(f, b);
  for (std::size_t g = 0; g < s.num_gens(); ++g) sb.rel.push_back(multiply(f, s.apply_rows(g, b), binv));
  return sb;
}

Matrix standard_images(const StandardBasis& sb, const ModuleRep& target, std::span<const Fe> u) {
  Matrix img(sb.dim, target.dim());
  std::copy(u.begin(), u.end(), img.row(0).begin());
  for (std::size_t t = 1; t < sb.dim; ++t) {
    auto [src, g] = sb.steps[t - 1];
    target.apply(g, img.row(src), img.row(t));
  }
  return img;
}

std::vector<Matrix> hom_space(const StandardBasis& sb, const ModuleRep& target, const Matrix& candidates) {
  const PrimeField& f = target.field();
  const std::size_t k = candidates.rows();
  if (k == 0) return {};
  std::vector<Matrix> images;
  const std::size_t block = sb.dim * target.dim();
  const std::size_t width = block * target.num_gens() + k;
  Echelon e(f, width);
  std::vector<Vec> rows;
  for (std::size_t l = 0; l < k; ++l) {
    images.push_back(standard_images(sb, target, candidates.row(l)));
    const Matrix& u = images.back();
    Vec row(width, 0);
    for (std::size_t g = 0; g < target.num_gens(); ++g) {
      Matrix lhs = target.apply_rows(g, u);
      Matrix rhs = multiply(f, sb.rel[g], u);
      for (std::size_t i = 0; i < block; ++i)
        row[g * block + i] = f.sub(lhs.data()[i], rhs.data()[i]);
    }
    row[width - k + l] = 1;
    rows.push_back(std::move(row));
  }
  Matrix stacked(0, 0);
  stacked.set_cols(width);
  for (auto& r : rows) stacked.append_row(r);
  Subspace s = Subspace::span(f, stacked);
  std::vector<Matrix> homs;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (s.pivots()[i] < width - k) continue;
    auto coeff = s.basis().row(i).subspan(width - k);
    Matrix h(sb.dim, target.dim());
    Accumulator acc(f, block);
    acc.clear();
    for (std::size_t l = 0; l < k; ++l)
      if (coeff[l]) acc.axpy(coeff[l], images[l].flat());
    acc.store(h.flat());
    homs.push_back(std::move(h));
  }
  return homs;
}

std::vector<Fe> fingerprint(const ModuleRep& m) {
  std::mt19937_64 rng(0x5eedf00dULL);
  std::vector<Fe> out;
  for (int i = 0; i < 16; ++i) {
    Word w;
    const int len = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < len; ++j) w.push_back(static_cast<std::uint16_t>(rng() % std::max<std::size_t>(1, m.num_gens())));
    out.push_back(m.num_gens() ? trace(m.field(), word_matrix(m, w)) : Fe(m.dim() % m.field().modulus()));
  }
  return out;
}

namespace {

using RepPtr = std::shared_ptr<const ModuleRep>;

struct RawFactor {
  RepPtr rep;
  IrreducibilityCertificate cert;
};

IrreducibilityCertificate one_dim_certificate(const ModuleRep& x) {
  IrreducibilityCertificate c;
  if (x.num_gens() > 0) {
    c.theta.terms.emplace_back(Fe(1), Word{0});
    Fe a = x.dense(0)(0, 0);
    c.theta.poly = {x.field().neg(a), 1};
  } else {
    c.theta.poly = {0, 1};
  }
  c.nullity = 1;
  return c;
}

// Either splits x (filling sub) or certifies it irreducible.
bool split_or_certify(const ModuleRep& x, std::mt19937_64& rng, Subspace& sub, IrreducibilityCertificate& cert) {
  const PrimeField& f = x.field();
  const std::size_t n = x.dim();
  for (int attempt = 0; attempt < 96; ++attempt) {
    AlgebraElement a = AlgebraElement::random(x.num_gens(), rng, f.modulus());
    Matrix am = evaluate_sum(x, a);
    Poly chi = charpoly(f, am);
    auto factors = poly::factor(f, chi, rng, 8);
    std::stable_sort(factors.begin(), factors.end(), [](const PolyFactor& p, const PolyFactor& q) {
      return p.factor.size() < q.factor.size();
    });
    int tried = 0;
    for (const auto& pf : factors) {
      if (++tried > 3) break;
      Matrix pm = poly::eval_matrix(f, pf.factor, am);
      Matrix ker = left_nullspace(f, pm);
      const std::size_t deg = static_cast<std::size_t>(poly::degree(pf.factor));
      if (ker.rows() == 0) throw CertificationError("chop: factor of the char poly has trivial kernel");
      Subspace u = spin(x, ker.row(0));
      if (u.dim() < n) {
        sub = std::move(u);
        return true;
      }
      if (ker.rows() == deg) {
        Matrix kert = right_nullspace(f, pm);
        Subspace w = spin(x.transposed(), kert.row(0));
        if (w.dim() < n) {
          sub = perp(f, w);
          if (!is_invariant(x, sub)) throw CertificationError("chop: annihilator of a dual submodule is not invariant");
          return true;
        }
        a.poly = pf.factor;
        cert.theta = std::move(a);
        cert.nullity = deg;
        return false;
      }
      for (std::size_t i = 1; i < std::min<std::size_t>(ker.rows(), 4); ++i) {
        Subspace u2 = spin(x, ker.row(i));
        if (u2.dim() < n) {
          sub = std::move(u2);
          return true;
        }
      }
    }
  }
  throw BudgetExceeded("chop: could not split or certify a module of dimension " + std::to_string(n));
}

Matrix certificate_kernel(const ModuleRep& m, const AlgebraElement& theta) {
  return left_nullspace(m.field(), evaluate(m, theta));
}

bool all_trivial(const ModuleRep& m) {
  for (std::size_t g = 0; g < m.num_gens(); ++g)
    if (!(m.dense(g) == Matrix::identity(m.dim()))) return false;
  return true;
}

}  // namespace

ChopResult chop(const ModuleRep& m, std::uint64_t seed) {
  ChopResult out;
  if (m.dim() == 0) return out;
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<RepPtr> work{std::make_shared<ModuleRep>(m)};
  std::vector<RawFactor> raw;
  while (!work.empty()) {
    RepPtr x = work.back();
    work.pop_back();
    if (x->dim() == 1) {
      raw.push_back({x, one_dim_certificate(*x)});
      continue;
    }
    Subspace sub;
    IrreducibilityCertificate cert;
    if (split_or_certify(*x, rng, sub, cert)) {
      work.push_back(std::make_shared<ModuleRep>(quotient_rep(*x, sub)));
      work.push_back(std::make_shared<ModuleRep>(sub_rep(*x, sub)));
    } else {
      raw.push_back({x, std::move(cert)});
    }
  }

  for (auto& rf : raw) {
    std::vector<Fe> fp = fingerprint(*rf.rep);
    bool placed = false;
    for (std::size_t c = 0; c < out.classes.size() && !placed; ++c) {
      FactorClass& cls = out.classes[c];
      if (cls.dim != rf.rep->dim() || cls.fingerprint != fp) continue;
      Matrix cand = certificate_kernel(*rf.rep, cls.cert.theta);
      if (!hom_space(cls.sb, *rf.rep, cand).empty()) {
        ++out.multiplicity[c];
        placed = true;
      }
    }
    if (placed) continue;
    FactorClass cls;
    cls.dim = rf.rep->dim();
    cls.fingerprint = std::move(fp);
    cls.rep = rf.rep;
    cls.cert = rf.cert;
    Matrix ker = certificate_kernel(*rf.rep, cls.cert.theta);
    if (ker.rows() != cls.cert.nullity) throw CertificationError("chop: certificate nullity changed");
    cls.sb = standard_basis(*rf.rep, ker.row(0));
    cls.trivial = all_trivial(*rf.rep);
    out.classes.push_back(std::move(cls));
    out.multiplicity.push_back(1);
    out.classes.back().abs_irred = abs_irred(out.classes.back());
  }

  // canonical order: by dimension, then fingerprint
  std::vector<std::size_t> idx(out.classes.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = out.classes[a];
    const auto& y = out.classes[b];
    if (x.dim != y.dim) return x.dim < y.dim;
    if (x.trivial != y.trivial) return x.trivial;
    return x.fingerprint < y.fingerprint;
  });
  ChopResult sorted;
  for (auto i : idx) {
    sorted.classes.push_back(std::move(out.classes[i]));
    sorted.multiplicity.push_back(out.multiplicity[i]);
  }
  return sorted;
}

bool is_iso(const FactorClass& a, const FactorClass& b) {
  if (a.dim != b.dim || a.fingerprint != b.fingerprint) return false;
  Matrix cand = certificate_kernel(*b.rep, a.cert.theta);
  return !hom_space(a.sb, *b.rep, cand).empty();
}

bool abs_irred(const FactorClass& f) {
  Matrix cand = certificate_kernel(*f.rep, f.cert.theta);
  return hom_space(f.sb, *f.rep, cand).size() == 1;
}

std::size_t endomorphism_dim_direct(const ModuleRep& s) {
  // unknown X (d x d) with X g - g X = 0 for every generator; one equation
  // row per (g, i, j), unknowns indexed i*d + k
  const PrimeField& f = s.field();
  const std::size_t d = s.dim();
  if (d > 60) throw InvalidInput("endomorphism_dim_direct: dimension too large");
  Matrix eqs(0, 0);
  eqs.set_cols(d * d);
  Vec row(d * d);
  for (std::size_t g = 0; g < s.num_gens(); ++g) {
    Matrix gm = s.dense(g);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        std::fill(row.begin(), row.end(), 0);
        // (X g)_{ij} = sum_k X_ik g_kj ; (g X)_{ij} = sum_k g_ik X_kj
        for (std::size_t k = 0; k < d; ++k) {
          row[i * d + k] = f.add(row[i * d + k], gm(k, j));
          row[k * d + j] = f.sub(row[k * d + j], gm(i, k));
        }
        eqs.append_row(row);
      }
  }
  return d * d - rank(f, eqs);
}

}  // namespace rank3

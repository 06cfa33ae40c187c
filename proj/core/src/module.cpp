#include "rank3/module.hpp"

#include <algorithm>

#include "rank3/error.hpp"

namespace rank3 {

ModuleRep::ModuleRep(const PrimeField& f, std::size_t dim, std::vector<Generator> gens)
    : f_(f), dim_(dim), gens_(std::move(gens)) {
  for (const auto& g : gens_) {
    if (const Perm* p = std::get_if<Perm>(&g)) {
      if (p->size() != dim_ || !perm_is_bijection(*p)) throw InvalidInput("ModuleRep: bad permutation");
    } else {
      const Matrix& m = std::get<Matrix>(g);
      if (m.rows() != dim_ || m.cols() != dim_) throw InvalidInput("ModuleRep: generator shape mismatch");
    }
  }
}

void ModuleRep::apply(std::size_t k, std::span<const Fe> x, std::span<Fe> out) const {
  if (const Perm* p = std::get_if<Perm>(&gens_[k])) {
    for (std::size_t i = 0; i < dim_; ++i) out[(*p)[i]] = x[i];
  } else {
    Vec y = vec_mul(f_, x, std::get<Matrix>(gens_[k]));
    std::copy(y.begin(), y.end(), out.begin());
  }
}

Vec ModuleRep::apply(std::size_t k, std::span<const Fe> x) const {
  Vec out(dim_);
  apply(k, x, out);
  return out;
}

Matrix ModuleRep::apply_rows(std::size_t k, const Matrix& u) const {
  if (const Perm* p = std::get_if<Perm>(&gens_[k])) {
    Matrix out(u.rows(), dim_);
    for (std::size_t r = 0; r < u.rows(); ++r) {
      auto src = u.row(r);
      auto dst = out.row(r);
      for (std::size_t i = 0; i < dim_; ++i) dst[(*p)[i]] = src[i];
    }
    return out;
  }
  return multiply(f_, u, std::get<Matrix>(gens_[k]));
}

Matrix ModuleRep::dense(std::size_t k) const {
  if (const Perm* p = std::get_if<Perm>(&gens_[k])) {
    Matrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) m(i, (*p)[i]) = 1;
    return m;
  }
  return std::get<Matrix>(gens_[k]);
}

ModuleRep ModuleRep::transposed() const {
  std::vector<Generator> t;
  for (const auto& g : gens_) {
    if (const Perm* p = std::get_if<Perm>(&g))
      t.emplace_back(perm_inverse(*p));
    else
      t.emplace_back(transpose(std::get<Matrix>(g)));
  }
  return ModuleRep(f_, dim_, std::move(t));
}

Subspace spin(const ModuleRep& m, const Matrix& seeds) {
  Echelon e(m.field(), m.dim());
  for (std::size_t i = 0; i < seeds.rows(); ++i) e.insert(seeds.row(i));
  Vec cur(m.dim()), img(m.dim());
  for (std::size_t k = 0; k < e.rank(); ++k) {
    auto row = e.rows().row(k);
    std::copy(row.begin(), row.end(), cur.begin());
    for (std::size_t g = 0; g < m.num_gens(); ++g) {
      m.apply(g, cur, img);
      e.insert(img);
    }
  }
  return Subspace::from_echelon(e);
}

Subspace spin(const ModuleRep& m, std::span<const Fe> seed) {
  Matrix s(0, 0);
  s.append_row(seed);
  return spin(m, s);
}

bool is_invariant(const ModuleRep& m, const Subspace& s) {
  if (s.ambient() != m.dim()) return false;
  for (std::size_t g = 0; g < m.num_gens(); ++g) {
    Matrix img = m.apply_rows(g, s.basis());
    for (std::size_t i = 0; i < img.rows(); ++i)
      if (!s.contains(m.field(), img.row(i))) return false;
  }
  return true;
}

ModuleRep sub_rep(const ModuleRep& m, const Subspace& s) {
  const std::size_t r = s.dim();
  const auto& piv = s.pivots();
  std::vector<Generator> gens;
  for (std::size_t g = 0; g < m.num_gens(); ++g) {
    Matrix img = m.apply_rows(g, s.basis());
    Matrix c(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) c(i, j) = img(i, piv[j]);
    gens.emplace_back(std::move(c));
  }
  return ModuleRep(m.field(), r, std::move(gens));
}

Matrix induced_on_quotient(const PrimeField& f, const Matrix& ambient, const Subspace& s) {
  const auto free = s.free_columns();
  Matrix out(free.size(), free.size());
  for (std::size_t j = 0; j < free.size(); ++j) {
    Vec y = s.project(f, ambient.row(free[j]));
    std::copy(y.begin(), y.end(), out.row(j).begin());
  }
  return out;
}

ModuleRep quotient_rep(const ModuleRep& m, const Subspace& s) {
  const PrimeField& f = m.field();
  const auto free = s.free_columns();
  const std::size_t q = free.size();
  std::vector<std::int32_t> free_index(m.dim(), -1), pivot_row(m.dim(), -1);
  for (std::size_t j = 0; j < q; ++j) free_index[free[j]] = static_cast<std::int32_t>(j);
  for (std::size_t i = 0; i < s.dim(); ++i) pivot_row[s.pivots()[i]] = static_cast<std::int32_t>(i);
  std::vector<Generator> gens;
  for (std::size_t g = 0; g < m.num_gens(); ++g) {
    if (const Perm* p = std::get_if<Perm>(&m.gen(g))) {
      // e_t with t a pivot column is congruent to minus the rest of its row
      Matrix c(q, q);
      for (std::size_t j = 0; j < q; ++j) {
        const std::uint32_t t = (*p)[free[j]];
        if (free_index[t] >= 0) {
          c(j, free_index[t]) = 1;
        } else {
          auto brow = s.basis().row(pivot_row[t]);
          for (std::size_t k = 0; k < q; ++k) c(j, k) = f.neg(brow[free[k]]);
        }
      }
      gens.emplace_back(std::move(c));
    } else {
      gens.emplace_back(induced_on_quotient(f, std::get<Matrix>(m.gen(g)), s));
    }
  }
  return ModuleRep(f, q, std::move(gens));
}

Matrix lift_rows(const Subspace& s, const Matrix& q_rows) {
  const auto free = s.free_columns();
  if (q_rows.cols() != free.size()) throw InvalidInput("lift_rows: width mismatch");
  Matrix out(q_rows.rows(), s.ambient());
  for (std::size_t i = 0; i < q_rows.rows(); ++i)
    for (std::size_t j = 0; j < free.size(); ++j) out(i, free[j]) = q_rows(i, j);
  return out;
}

AlgebraElement AlgebraElement::random(std::size_t num_gens, std::mt19937_64& rng, std::uint32_t p,
                                      int max_terms, int max_len) {
  if (num_gens == 0) throw InvalidInput("AlgebraElement::random: no generators");
  AlgebraElement a;
  const int terms = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms));
  for (int t = 0; t < terms; ++t) {
    const int len = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_len));
    Word w;
    for (int i = 0; i < len; ++i) w.push_back(static_cast<std::uint16_t>(rng() % num_gens));
    const Fe c = static_cast<Fe>(1 + rng() % (p - 1));
    a.terms.emplace_back(c, std::move(w));
  }
  return a;
}

Matrix word_matrix(const ModuleRep& m, const Word& w) {
  if (w.empty()) return Matrix::identity(m.dim());
  Matrix acc = m.dense(w.front());
  for (std::size_t i = 1; i < w.size(); ++i) acc = m.apply_rows(w[i], acc);
  return acc;
}

Matrix evaluate_sum(const ModuleRep& m, const AlgebraElement& a) {
  const PrimeField& f = m.field();
  const std::size_t n = m.dim();
  Matrix out(n, n);
  bool all_perm = true;
  for (std::size_t g = 0; g < m.num_gens(); ++g) all_perm = all_perm && m.is_permutation(g);
  for (const auto& [c, w] : a.terms) {
    if (all_perm) {
      Perm p = perm_identity(n);
      for (auto k : w) p = perm_compose(p, std::get<Perm>(m.gen(k)));
      for (std::size_t i = 0; i < n; ++i) out(i, p[i]) = f.add(out(i, p[i]), c);
    } else {
      out = add(f, out, scale(f, word_matrix(m, w), c));
    }
  }
  return out;
}

Matrix evaluate(const ModuleRep& m, const AlgebraElement& a) {
  Matrix s = evaluate_sum(m, a);
  if (a.poly == Poly{0, 1}) return s;
  return poly::eval_matrix(m.field(), a.poly, s);
}

}  // namespace rank3

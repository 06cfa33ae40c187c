#include "rank3/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <string_view>

#include "rank3/error.hpp"

namespace rank3 {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void Matrix::append_row(std::span<const Fe> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw InvalidInput("Matrix::append_row: width mismatch");
  data_.insert(data_.end(), r.begin(), r.end());
  ++rows_;
}

void Matrix::set_cols(std::size_t cols) {
  if (rows_ != 0) throw InvalidInput("Matrix::set_cols on non-empty matrix");
  cols_ = cols;
}

void Accumulator::load(std::span<const Fe> v) {
  std::copy(v.begin(), v.end(), acc_.begin());
}

void Accumulator::clear() { std::fill(acc_.begin(), acc_.end(), 0u); }

void Accumulator::axpy(std::uint32_t k, std::span<const Fe> r) {
  std::uint32_t* __restrict a = acc_.data();
  const Fe* __restrict s = r.data();
  const std::size_t n = acc_.size();
  for (std::size_t j = 0; j < n; ++j) a[j] += k * std::uint32_t(s[j]);
}

void Accumulator::store(std::span<Fe> out) const {
  for (std::size_t j = 0; j < acc_.size(); ++j) out[j] = Fe(f_->mod32(acc_[j]));
}

Echelon::Echelon(const PrimeField& f, std::size_t width)
    : f_(f), width_(width), pivot_row_(width, -1) {
  rows_.set_cols(width);
}

bool Echelon::reduce(std::span<Fe> v) const {
  if (rank() == 0) return std::any_of(v.begin(), v.end(), [](Fe x) { return x != 0; });
  Accumulator acc(f_, width_);
  acc.load(v);
  const std::uint32_t p = f_.modulus();
  for (std::size_t i = 0; i < rank(); ++i) {
    Fe c = acc.at(pivots_[i]);
    if (c) acc.axpy(p - c, rows_.row(i));
  }
  acc.store(v);
  return std::any_of(v.begin(), v.end(), [](Fe x) { return x != 0; });
}

bool Echelon::reduce(std::span<Fe> v, std::vector<Fe>& coeff) const {
  coeff.assign(rank(), 0);
  Accumulator acc(f_, width_);
  acc.load(v);
  const std::uint32_t p = f_.modulus();
  for (std::size_t i = 0; i < rank(); ++i) {
    Fe c = acc.at(pivots_[i]);
    coeff[i] = c;
    if (c) acc.axpy(p - c, rows_.row(i));
  }
  acc.store(v);
  return std::any_of(v.begin(), v.end(), [](Fe x) { return x != 0; });
}

bool Echelon::contains(std::span<const Fe> v) const {
  Vec w(v.begin(), v.end());
  return !reduce(w);
}

bool Echelon::insert(std::span<const Fe> v) {
  Vec w(v.begin(), v.end());
  if (!reduce(w)) return false;
  insert_reduced(w);
  return true;
}

void Echelon::insert_reduced(std::span<Fe> v) {
  std::size_t j = 0;
  while (j < v.size() && v[j] == 0) ++j;
  if (j == v.size()) throw InvalidInput("Echelon::insert_reduced: zero vector");
  Fe k = f_.inv(v[j]);
  if (k != 1)
    for (auto& x : v) x = f_.mul(x, k);
  pivot_row_[j] = static_cast<std::int32_t>(rank());
  pivots_.push_back(static_cast<std::uint32_t>(j));
  rows_.append_row(v);
}

Subspace Subspace::from_echelon(const Echelon& e) {
  const PrimeField& f = e.field();
  const std::size_t r = e.rank(), n = e.width();
  const auto& piv = e.pivots();
  // Back-substitute in reverse insertion order: later rows already vanish at
  // every earlier pivot, so each row only needs clearing at later pivots.
  std::vector<Vec> rows(r);
  Accumulator acc(f, n);
  const std::uint32_t p = f.modulus();
  for (std::size_t ii = r; ii-- > 0;) {
    auto src = e.rows().row(ii);
    acc.load(src);
    for (std::size_t j = ii + 1; j < r; ++j) {
      Fe c = src[piv[j]];
      if (c) acc.axpy(p - c, rows[j]);
    }
    rows[ii].resize(n);
    acc.store(rows[ii]);
  }
  std::vector<std::size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return piv[a] < piv[b]; });
  Subspace s(n);
  s.basis_.reserve_rows(r);
  for (std::size_t i : order) {
    s.basis_.append_row(rows[i]);
    s.pivots_.push_back(piv[i]);
  }
  return s;
}

Subspace Subspace::span(const PrimeField& f, const Matrix& rows) {
  Echelon e(f, rows.cols());
  for (std::size_t i = 0; i < rows.rows(); ++i) e.insert(rows.row(i));
  return from_echelon(e);
}

Subspace Subspace::full(std::size_t ambient) {
  Subspace s(ambient);
  s.basis_ = Matrix::identity(ambient);
  s.pivots_.resize(ambient);
  std::iota(s.pivots_.begin(), s.pivots_.end(), 0u);
  return s;
}

std::vector<std::uint32_t> Subspace::free_columns() const {
  std::vector<char> is_piv(ambient_, 0);
  for (auto c : pivots_) is_piv[c] = 1;
  std::vector<std::uint32_t> out;
  out.reserve(ambient_ - dim());
  for (std::uint32_t j = 0; j < ambient_; ++j)
    if (!is_piv[j]) out.push_back(j);
  return out;
}

namespace {

// Remainder of v modulo a reduced echelon basis; the coefficient of row i is
// simply v at pivot i.
void remainder(const PrimeField& f, const Matrix& basis, const std::vector<std::uint32_t>& piv,
               std::span<const Fe> v, std::span<Fe> out) {
  Accumulator acc(f, v.size());
  acc.load(v);
  const std::uint32_t p = f.modulus();
  for (std::size_t i = 0; i < piv.size(); ++i) {
    Fe c = v[piv[i]];
    if (c) acc.axpy(p - c, basis.row(i));
  }
  acc.store(out);
}

}  // namespace

bool Subspace::contains(const PrimeField& f, std::span<const Fe> v) const {
  if (v.size() != ambient_) throw InvalidInput("Subspace::contains: width mismatch");
  Vec r(ambient_);
  remainder(f, basis_, pivots_, v, r);
  return std::all_of(r.begin(), r.end(), [](Fe x) { return x == 0; });
}

bool Subspace::contains(const PrimeField& f, const Subspace& other) const {
  if (other.dim() > dim()) return false;
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(f, other.basis().row(i))) return false;
  return true;
}

Vec Subspace::project(const PrimeField& f, std::span<const Fe> v) const {
  Vec r(ambient_);
  remainder(f, basis_, pivots_, v, r);
  Vec out;
  out.reserve(ambient_ - dim());
  std::size_t k = 0;
  for (std::uint32_t j = 0; j < ambient_; ++j) {
    if (k < pivots_.size() && pivots_[k] == j) {
      ++k;
      continue;
    }
    out.push_back(r[j]);
  }
  return out;
}

std::size_t Subspace::hash() const {
  // FNV-1a over the canonical basis bytes.
  std::uint64_t h = 1469598103934665603ull ^ ambient_;
  for (Fe x : basis_.data()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  h ^= dim();
  h *= 1099511628211ull;
  return static_cast<std::size_t>(h);
}

Subspace sum(const PrimeField& f, const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw InvalidInput("sum: ambient mismatch");
  Echelon e(f, a.ambient());
  for (std::size_t i = 0; i < a.dim(); ++i) e.insert(a.basis().row(i));
  for (std::size_t i = 0; i < b.dim(); ++i) e.insert(b.basis().row(i));
  return Subspace::from_echelon(e);
}

Subspace perp(const PrimeField& f, const Subspace& a) {
  const std::size_t n = a.ambient();
  Matrix rows(0, 0);
  rows.set_cols(n);
  rows.reserve_rows(n - a.dim());
  Vec x(n);
  const auto& piv = a.pivots();
  for (std::uint32_t j : a.free_columns()) {
    std::fill(x.begin(), x.end(), 0);
    x[j] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = f.neg(a.basis()(i, j));
    rows.append_row(x);
  }
  return Subspace::span(f, rows);
}

Subspace intersect(const PrimeField& f, const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw InvalidInput("intersect: ambient mismatch");
  if (a.contains(f, b)) return b;
  if (b.contains(f, a)) return a;
  return perp(f, sum(f, perp(f, a), perp(f, b)));
}

Fe dot(const PrimeField& f, std::span<const Fe> a, std::span<const Fe> b) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::uint32_t(a[i]) * b[i];
  return Fe(s % f.modulus());
}

Matrix multiply(const PrimeField& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("multiply: shape mismatch");
  Matrix c(a.rows(), b.cols());
  Accumulator acc(f, b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    acc.clear();
    auto ar = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (ar[k]) acc.axpy(ar[k], b.row(k));
    acc.store(c.row(i));
  }
  return c;
}

Vec vec_mul(const PrimeField& f, std::span<const Fe> x, const Matrix& a) {
  if (x.size() != a.rows()) throw InvalidInput("vec_mul: shape mismatch");
  Accumulator acc(f, a.cols());
  acc.clear();
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k]) acc.axpy(x[k], a.row(k));
  Vec out(a.cols());
  acc.store(out);
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix add(const PrimeField& f, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidInput("add: shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.add(a(i, j), b(i, j));
  return c;
}

Matrix scale(const PrimeField& f, const Matrix& a, Fe k) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.mul(a(i, j), k);
  return c;
}

Matrix add_identity(const PrimeField& f, const Matrix& a, Fe k) {
  Matrix c = a;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) c(i, i) = f.add(c(i, i), k);
  return c;
}

Fe trace(const PrimeField& f, const Matrix& a) {
  Fe t = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) t = f.add(t, a(i, i));
  return t;
}

std::size_t rank(const PrimeField& f, const Matrix& a) {
  Echelon e(f, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) e.insert(a.row(i));
  return e.rank();
}

Matrix right_nullspace(const PrimeField& f, const Matrix& a) {
  Subspace row_space = Subspace::span(f, a);
  return perp(f, row_space).basis();
}

Matrix left_nullspace(const PrimeField& f, const Matrix& a) {
  return right_nullspace(f, transpose(a));
}

Matrix inverse(const PrimeField& f, const Matrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw InvalidInput("inverse: not square");
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(a.row(i).begin(), a.row(i).end(), aug.row(i).begin());
    aug(i, n + i) = 1;
  }
  Subspace s = Subspace::span(f, aug);
  if (s.dim() != n || (n > 0 && s.pivots().back() != n - 1))
    throw CertificationError("inverse: matrix is singular");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    std::copy(s.basis().row(i).begin() + n, s.basis().row(i).end(), inv.row(i).begin());
  return inv;
}

}  // namespace rank3

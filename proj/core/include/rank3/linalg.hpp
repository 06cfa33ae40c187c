#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rank3/field.hpp"

namespace rank3 {

using Vec = std::vector<Fe>;

// Dense row-major matrix of prime-field elements.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  std::span<Fe> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Fe> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Fe& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Fe operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  // Width must match (or the matrix must be 0x0, which then adopts it).
  void append_row(std::span<const Fe> r);
  void reserve_rows(std::size_t n) { data_.reserve(n * cols_); }
  void set_cols(std::size_t cols);  // only valid while empty

  const std::vector<Fe>& data() const { return data_; }
  std::span<Fe> flat() { return data_; }
  std::span<const Fe> flat() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Fe> data_;
};

// Lazy accumulator for linear combinations of rows. Entries are kept as
// unreduced 32-bit sums; with entries < 251 the budget allows tens of
// thousands of axpy steps before an overflow could occur, far more than any
// reduction here performs.
class Accumulator {
 public:
  Accumulator(const PrimeField& f, std::size_t width) : f_(&f), acc_(width, 0) {}

  void load(std::span<const Fe> v);
  void clear();
  // acc += k * r, k in [0, p)
  void axpy(std::uint32_t k, std::span<const Fe> r);
  Fe at(std::size_t j) const { return Fe(f_->mod32(acc_[j])); }
  void store(std::span<Fe> out) const;
  std::size_t width() const { return acc_.size(); }

 private:
  const PrimeField* f_;
  std::vector<std::uint32_t> acc_;
};

// Semi-echelon basis built incrementally: every stored row has a leading 1 at
// its pivot column and zeros at the pivots of earlier rows.
class Echelon {
 public:
  Echelon(const PrimeField& f, std::size_t width);

  std::size_t rank() const { return rows_.rows(); }
  std::size_t width() const { return width_; }
  const Matrix& rows() const { return rows_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }
  const PrimeField& field() const { return f_; }

  // Reduces v in place against the basis; true if a nonzero remainder is left.
  bool reduce(std::span<Fe> v) const;
  // Same, also reporting the coefficient of each basis row removed
  // (v_in = remainder + sum coeff[i] * row i).
  bool reduce(std::span<Fe> v, std::vector<Fe>& coeff) const;
  bool contains(std::span<const Fe> v) const;
  // Inserts the reduced remainder of v; returns false if v was in the span.
  bool insert(std::span<const Fe> v);
  // Inserts an already-reduced nonzero vector (normalizes it).
  void insert_reduced(std::span<Fe> v);

 private:
  PrimeField f_;
  std::size_t width_;
  Matrix rows_;
  std::vector<std::uint32_t> pivots_;
  std::vector<std::int32_t> pivot_row_;  // column -> row index or -1
};

// Immutable subspace in canonical form: reduced row echelon basis with rows
// sorted by pivot column. Equal subspaces have identical bases.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) { basis_.set_cols(ambient); }

  static Subspace span(const PrimeField& f, const Matrix& rows);
  static Subspace from_echelon(const Echelon& e);
  static Subspace full(std::size_t ambient);

  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient() const { return ambient_; }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }
  // Columns that are not pivots, ascending. These index quotient coordinates.
  std::vector<std::uint32_t> free_columns() const;

  bool contains(const PrimeField& f, std::span<const Fe> v) const;
  bool contains(const PrimeField& f, const Subspace& other) const;
  // Remainder of v modulo the subspace, restricted to the free columns.
  Vec project(const PrimeField& f, std::span<const Fe> v) const;

  std::size_t hash() const;
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::uint32_t> pivots_;
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const { return s.hash(); }
};

Subspace sum(const PrimeField& f, const Subspace& a, const Subspace& b);
Subspace intersect(const PrimeField& f, const Subspace& a, const Subspace& b);
// Orthogonal complement under the standard dot product.
Subspace perp(const PrimeField& f, const Subspace& a);

Fe dot(const PrimeField& f, std::span<const Fe> a, std::span<const Fe> b);
Matrix multiply(const PrimeField& f, const Matrix& a, const Matrix& b);
Vec vec_mul(const PrimeField& f, std::span<const Fe> x, const Matrix& a);
Matrix transpose(const Matrix& a);
Matrix add(const PrimeField& f, const Matrix& a, const Matrix& b);
Matrix scale(const PrimeField& f, const Matrix& a, Fe k);
// a + k * I
Matrix add_identity(const PrimeField& f, const Matrix& a, Fe k);
Fe trace(const PrimeField& f, const Matrix& a);
std::size_t rank(const PrimeField& f, const Matrix& a);
// Canonical basis of {x : x a = 0}.
Matrix left_nullspace(const PrimeField& f, const Matrix& a);
// Canonical basis of {x : a x^T = 0}, i.e. vectors orthogonal to every row.
Matrix right_nullspace(const PrimeField& f, const Matrix& a);
// Throws CertificationError when singular.
Matrix inverse(const PrimeField& f, const Matrix& a);

}  // namespace rank3

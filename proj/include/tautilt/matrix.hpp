#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "tautilt/errors.hpp"
#include "tautilt/fp.hpp"

namespace tautilt {

/** Dense matrix over F_p, row major.  All elimination routines pivot on the
    first nonzero entry in column order, so ranks, kernels and solutions are
    deterministic across runs and platforms. */
class Matrix {
 public:
  Matrix() : field_(2), rows_(0), cols_(0) {}
  Matrix(Fp field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), e_(rows * cols, 0) {}
  Matrix(Fp field, std::size_t rows, std::size_t cols,
         std::initializer_list<std::int64_t> entries)
      : Matrix(field, rows, cols) {
    if (entries.size() != rows * cols)
      throw InvalidInputError("matrix literal has wrong entry count");
    std::size_t k = 0;
    for (auto v : entries) e_[k++] = field_.norm(v);
  }

  static Matrix zero(Fp field, std::size_t rows, std::size_t cols) {
    return Matrix(field, rows, cols);
  }
  static Matrix identity(Fp field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  const Fp& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const {
    return e_[i * cols_ + j];
  }

  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
           e_ == o.e_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (auto v : e_)
      if (v) return false;
    return true;
  }
  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Matrix operator*(const Matrix& b) const {
    check_field(b);
    if (cols_ != b.rows_) throw InvalidInputError("matrix product shape mismatch");
    Matrix c(field_, rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        std::uint32_t a = at(i, k);
        if (!a) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c.at(i, j) = field_.add(c.at(i, j), field_.mul(a, b.at(k, j)));
      }
    return c;
  }

  Matrix operator+(const Matrix& b) const {
    check_field(b);
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw InvalidInputError("matrix sum shape mismatch");
    Matrix c(field_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k)
      c.e_[k] = field_.add(e_[k], b.e_[k]);
    return c;
  }

  Matrix operator-(const Matrix& b) const {
    check_field(b);
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw InvalidInputError("matrix difference shape mismatch");
    Matrix c(field_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k)
      c.e_[k] = field_.sub(e_[k], b.e_[k]);
    return c;
  }

  Matrix scaled(std::uint32_t c) const {
    Matrix m(field_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = field_.mul(e_[k], c);
    return m;
  }

  Matrix pow(std::size_t n) const {
    if (!is_square()) throw InvalidInputError("power of a non-square matrix");
    Matrix acc = identity(field_, rows_);
    for (std::size_t k = 0; k < n; ++k) acc = acc * (*this);
    return acc;
  }

  Matrix submatrix(std::size_t r0, std::size_t c0, std::size_t nr,
                   std::size_t nc) const {
    Matrix m(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = at(r0 + i, c0 + j);
    return m;
  }

  Matrix col(std::size_t j) const { return submatrix(0, j, rows_, 1); }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    check_field(b);
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
      throw InvalidInputError("block write out of range");
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
  }

  /** Row echelon reduction in place; returns the pivot column of each pivot
      row, in row order. */
  std::vector<std::size_t> rref_inplace() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t sel = rows_;
      for (std::size_t i = r; i < rows_; ++i)
        if (at(i, c)) {
          sel = i;
          break;
        }
      if (sel == rows_) continue;
      if (sel != r)
        for (std::size_t j = 0; j < cols_; ++j)
          std::swap(at(sel, j), at(r, j));
      std::uint32_t s = field_.inv(at(r, c));
      for (std::size_t j = c; j < cols_; ++j) at(r, j) = field_.mul(at(r, j), s);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        std::uint32_t f = at(i, c);
        if (!f) continue;
        for (std::size_t j = c; j < cols_; ++j)
          at(i, j) = field_.sub(at(i, j), field_.mul(f, at(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref_inplace().size();
  }

  /** Columns spanning the right null space { x : Ax = 0 }, one per free
      column of the echelon form, in ascending free-column order. */
  Matrix kernel_basis() const {
    Matrix m = *this;
    std::vector<std::size_t> pivots = m.rref_inplace();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols_; ++c)
      if (!is_pivot[c]) free_cols.push_back(c);
    Matrix k(field_, cols_, free_cols.size());
    for (std::size_t f = 0; f < free_cols.size(); ++f) {
      std::size_t fc = free_cols[f];
      k.at(fc, f) = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r)
        k.at(pivots[r], f) = field_.neg(m.at(r, fc));
    }
    return k;
  }

  /** One solution X of (*this) X = b, or nullopt when the system is
      inconsistent; free variables are set to zero.  b may have any number
      of columns. */
  std::optional<Matrix> solve_right(const Matrix& b) const {
    check_field(b);
    if (rows_ != b.rows_)
      throw InvalidInputError("solve_right: row count mismatch");
    Matrix aug(field_, rows_, cols_ + b.cols_);
    aug.set_block(0, 0, *this);
    aug.set_block(0, cols_, b);
    std::vector<std::size_t> pivots = aug.rref_inplace();
    for (auto c : pivots)
      if (c >= cols_) return std::nullopt;
    Matrix x(field_, cols_, b.cols_);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      for (std::size_t j = 0; j < b.cols_; ++j)
        x.at(pivots[r], j) = aug.at(r, cols_ + j);
    return x;
  }

 private:
  void check_field(const Matrix& o) const {
    if (field_ != o.field_) throw InvalidInputError("mixed field orders");
  }

  Fp field_;
  std::size_t rows_, cols_;
  std::vector<std::uint32_t> e_;
};

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw InvalidInputError("hstack: row mismatch");
  Matrix m(a.field(), a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw InvalidInputError("vstack: column mismatch");
  Matrix m(a.field(), a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

/** Canonical basis of the column span: unique reduced column echelon form,
    so equal subspaces produce byte-identical matrices. */
inline Matrix column_space(const Matrix& m) {
  Matrix t = m.transpose();
  std::vector<std::size_t> pivots = t.rref_inplace();
  Matrix basis(m.field(), m.rows(), pivots.size());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t i = 0; i < m.rows(); ++i) basis.at(i, r) = t.at(r, i);
  return basis;
}

inline bool in_span(const Matrix& gens, const Matrix& v) {
  return gens.solve_right(v).has_value();
}

inline Matrix subspace_sum(const Matrix& u, const Matrix& v) {
  return column_space(hstack(u, v));
}

/** Intersection of two column spans, canonicalized. */
inline Matrix subspace_intersect(const Matrix& u, const Matrix& v) {
  if (u.cols() == 0 || v.cols() == 0)
    return Matrix(u.field(), u.rows(), 0);
  Matrix k = hstack(u, v).kernel_basis();
  Matrix coeffs = k.submatrix(0, 0, u.cols(), k.cols());
  return column_space(u * coeffs);
}

/** Quotient of k^n by a column span U: proj maps k^n onto coordinates of a
    chosen complement (standard basis vectors picked greedily), section embeds
    them back.  proj * section = id, proj * U = 0. */
struct QuotientMap {
  Matrix proj;     // (n - dim U) x n
  Matrix section;  // n x (n - dim U)
};

inline QuotientMap quotient_map(const Matrix& u) {
  const Fp field = u.field();
  const std::size_t n = u.rows();
  Matrix basis = column_space(u);
  Matrix aug = hstack(basis, Matrix::identity(field, n));
  std::vector<std::size_t> pivots = aug.rref_inplace();
  std::vector<std::size_t> comp;  // standard vectors completing the basis
  for (auto c : pivots)
    if (c >= basis.cols()) comp.push_back(c - basis.cols());
  Matrix section(field, n, comp.size());
  for (std::size_t j = 0; j < comp.size(); ++j) section.at(comp[j], j) = 1;
  Matrix s = hstack(basis, section);
  std::optional<Matrix> inv = s.solve_right(Matrix::identity(field, n));
  if (!inv) throw Error("internal: quotient basis completion not invertible");
  QuotientMap q;
  q.proj = inv->submatrix(basis.cols(), 0, comp.size(), n);
  q.section = section;
  return q;
}

}  // namespace tautilt

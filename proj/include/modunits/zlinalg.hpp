#pragma once

#include "modunits/numtheory.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace modunits {

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  void append_row(std::span<const T> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("Matrix::append_row: width mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant of a square integer matrix.
Integer det(const IntMatrix& m);

/// Exact determinant of a square rational matrix; clears denominators row by
/// row and runs the integer elimination.
Rational det(const RatMatrix& m);

struct HermiteForm {
  IntMatrix h;  ///< row Hermite normal form, zero rows last
  IntMatrix u;  ///< unimodular transform with u * input == h
  std::vector<std::size_t> pivot_cols;

  std::vector<Integer> pivots() const;
};

/// Row-style Hermite normal form: positive pivots, entries above each pivot
/// reduced into [0, pivot).
HermiteForm hnf(const IntMatrix& m);

struct SmithForm {
  /// Nonzero diagonal invariants in divisibility order, units included.
  std::vector<Integer> diagonal;

  std::size_t rank() const { return diagonal.size(); }
  /// Invariants with the leading units dropped.
  std::vector<Integer> nontrivial() const;
};

/// Smith normal form over Z by exact elimination. Intended for matrices of
/// moderate size; see snf_modular for the large full-rank case.
SmithForm snf(const IntMatrix& m);

struct ModularSmithForm {
  /// Invariants d_1 | d_2 | ... | d_n (units included) of Z^n / rowspan(A).
  std::vector<Integer> diagonal;
  /// Row i is a representative (entries in [0, D)) of the class that
  /// generates the cyclic factor Z/d_i.
  IntMatrix generators;
};

/// Smith form of a square nonsingular integer matrix with known |det| = D.
/// All arithmetic is carried out modulo D, which bounds entry growth.
/// Without generators only the diagonal is computed.
ModularSmithForm snf_modular(const IntMatrix& a, const Integer& abs_det, bool with_generators = true);

/// Solves y * a = x over Q for square nonsingular a.
std::vector<Rational> solve_left(const IntMatrix& a, std::span<const Integer> x);

/// Order of the class of x in Z^n / rowspan(a): the lcm of the denominators
/// of x * a^{-1}.
Integer class_order(const IntMatrix& a, std::span<const Integer> x);

/// True when x lies in the integer row span of the square nonsingular a.
bool in_row_lattice(const IntMatrix& a, std::span<const Integer> x);

/// Index of the lattice spanned by n-1 zero-sum rows inside the lattice of
/// all zero-sum integer vectors of length n. Borders the rows with
/// (1, 0, ..., 0) and takes |det|; 0 when the rows are dependent.
Rational lattice_index(const IntMatrix& rows);

/// rows with (1, 0, ..., 0) appended.
IntMatrix bordered(const IntMatrix& rows);

}  // namespace modunits

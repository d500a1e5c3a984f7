#pragma once

// Exact integer and rational linear algebra. Every routine here works over
// GMP integers or rationals; nothing touches floating point.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "tensegrity/error.hpp"

namespace tensegrity {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

/// Dense row-major matrix with explicit dimensions.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows,
                          std::size_t cols_if_empty = 0) {
    std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols)
        throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<T> row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
  }
  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  void append_row(std::span<const T> values) {
    if (rows_ == 0 && cols_ == 0) cols_ = values.size();
    if (values.size() != cols_)
      throw Error(ErrorCode::DimensionMismatch, "appended row has wrong length");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rat(const IntMatrix& m);
RatVector to_rat(const IntVector& v);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);
RatVector multiply(const RatMatrix& a, const RatVector& x);
Int dot(std::span<const Int> a, std::span<const Int> b);
Rat dot(std::span<const Rat> a, std::span<const Rat> b);

/// num/den in lowest terms; den must be nonzero.
Rat make_rat(const Int& num, const Int& den);

/// gcd of all entries (0 for the zero vector).
Int content(std::span<const Int> v);

/// v divided by the gcd of its entries. Throws ZeroVector.
IntVector primitive(std::span<const Int> v);

/// Smallest positive integer multiple of a rational vector.
IntVector clear_denominators(std::span<const Rat> v);

/// Rescales a rational vector to integer entries with gcd 1 and first nonzero
/// entry positive. The zero vector is returned unchanged.
RatVector normalize_direction(std::span<const Rat> v);

/// left * a * right == diagonal, left and right unimodular.
struct SmithDecomposition {
  IntMatrix diagonal;
  IntMatrix left;
  IntMatrix right;
  std::size_t rank = 0;
};

/// Pivot is always the smallest nonzero absolute value of the remaining
/// block, ties broken by row-major position.
SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Nonzero Smith invariants d1 | d2 | ..., all positive.
std::vector<Int> elementary_divisors(const IntMatrix& a);

/// Index of the lattice spanned by the rows inside its saturation.
/// Throws DependentRays if the rows are linearly dependent.
Int lattice_index(const IntMatrix& rows);

/// Row-style Hermite normal form with zero rows removed; the unique basis of
/// the row lattice in echelon form with positive pivots and reduced entries
/// above each pivot.
IntMatrix hermite_normal_form(const IntMatrix& a);

/// Hermite-normal basis (as rows) of the saturated lattice {x in Z^n : a x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

Int determinant(const IntMatrix& a);
Rat determinant(const RatMatrix& a);

struct EchelonForm {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
};

EchelonForm reduced_row_echelon(const RatMatrix& a);
std::size_t rank(const RatMatrix& a);
std::size_t rank(const IntMatrix& a);

/// Canonical basis of span(vectors): rows of the reduced echelon form, each
/// scaled with normalize_direction. Two families span the same subspace iff
/// their canonical bases are equal.
std::vector<RatVector> canonical_span_basis(const std::vector<RatVector>& vectors,
                                            std::size_t n);

/// Right null space over Q in canonical form (see canonical_span_basis).
std::vector<RatVector> kernel_basis(const RatMatrix& a);

/// Homogeneous linear constraints on a fixed number of unknowns; each
/// constraint row carries a label for diagnostics.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t variables) : variables_(variables), rows_(0, variables) {}

  void add(std::string label, std::span<const Rat> coefficients);

  std::size_t variables() const noexcept { return variables_; }
  const RatMatrix& matrix() const noexcept { return rows_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

 private:
  std::size_t variables_;
  RatMatrix rows_;
  std::vector<std::string> labels_;
};

std::vector<RatVector> solve_constrained(std::size_t variables,
                                         const RatMatrix& constraints);
std::vector<RatVector> solve_constrained(const LinearSystem& system);

bool in_span(std::span<const Rat> v, const std::vector<RatVector>& basis);
bool same_span(const std::vector<RatVector>& a, const std::vector<RatVector>& b,
               std::size_t n);

/// "p/q" or "p"; throws ParseError on anything else (q must be positive).
Rat parse_rat(const std::string& text);
Int parse_int(const std::string& text);
std::string to_string(const Rat& q);
std::string to_string(const Int& z);

}  // namespace tensegrity

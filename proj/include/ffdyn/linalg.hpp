#pragma once

#include <cstddef>
#include <vector>

#include "ffdyn/field.hpp"

namespace ffdyn {

using Vector = std::vector<FieldElement>;

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix(Field field, std::size_t rows, std::size_t cols);
  /// Row list; every row must have the same length. Throws DimensionMismatch.
  static Matrix from_rows(Field field, const std::vector<Vector>& rows);
  static Matrix identity(Field field, std::size_t n);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElement& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const FieldElement& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector operator*(const Vector& v) const;
  /// [A | b].
  Matrix augmented(const Vector& b) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> entries_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Pivots are taken left to right, each at the
/// first row (top to bottom) with a nonzero entry in that column; no other
/// pivoting, so the result is deterministic.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Solution set of A x = b: the particular solution with every free variable
/// set to zero, plus one nullspace vector per free column.
struct AffineSolutionSet {
  Vector particular;
  std::vector<Vector> basis;
  std::size_t ambient_dim = 0;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;

  std::size_t nullity() const { return basis.size(); }
};

/// Throws DimensionMismatch when |b| != rows, Inconsistent when
/// rank(A) < rank(A|b).
AffineSolutionSet solve_affine(const Matrix& a, const Vector& b);

/// Basis of {v : A v = 0}, one vector per free column in ascending column
/// order. The vector for free column j has a 1 at j, zeros at the other free
/// columns, and -R[i][j] at pivot column i of the reduced form R.
std::vector<Vector> nullspace(const Matrix& a);

}  // namespace ffdyn

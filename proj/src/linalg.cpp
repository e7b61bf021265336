#include "ffdyn/linalg.hpp"

#include <string>
#include <utility>

namespace ffdyn {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, field.zero()) {}

Matrix Matrix::from_rows(Field field, const std::vector<Vector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DimensionMismatch("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                              " entries, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(rows[r][c].field() == field)) throw FieldMismatch("matrix entry from another field");
      m(r, c) = rows[r][c];
    }
  }
  return m;
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
  Vector out(rows_, field_.zero());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const FieldElement& e = (*this)(r, c);
      if (!e.is_zero()) out[r] += e * v[c];
    }
  }
  return out;
}

Matrix Matrix::augmented(const Vector& b) const {
  if (b.size() != rows_) {
    throw DimensionMismatch("right-hand side has " + std::to_string(b.size()) + " entries, matrix has " +
                            std::to_string(rows_) + " rows");
  }
  Matrix m(field_, rows_, cols_ + 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
    if (!(b[r].field() == field_)) throw FieldMismatch("right-hand side from another field");
    m(r, cols_) = b[r];
  }
  return m;
}

namespace {

// Eliminates over the first `limit` columns only.
RrefResult rref_columns(Matrix m, std::size_t limit) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < limit && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    }
    const FieldElement scale = m(row, col).inverse();
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= scale;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const FieldElement f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  const std::size_t rank = pivots.size();
  return RrefResult{std::move(m), rank, std::move(pivots)};
}

std::vector<Vector> nullspace_from_rref(const RrefResult& rr, std::size_t cols) {
  const Field& k = rr.reduced.field();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t pc : rr.pivots) is_pivot[pc] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, k.zero());
    v[free] = k.one();
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

RrefResult rref(const Matrix& m) { return rref_columns(m, m.cols()); }

std::size_t rank(const Matrix& m) { return rref(m).rank; }

AffineSolutionSet solve_affine(const Matrix& a, const Vector& b) {
  const std::size_t n = a.cols();
  RrefResult rr = rref_columns(a.augmented(b), n);
  for (std::size_t r = rr.rank; r < a.rows(); ++r) {
    if (!rr.reduced(r, n).is_zero()) {
      throw Inconsistent("linear system is inconsistent: rank(A) = " + std::to_string(rr.rank) +
                         " < rank(A|b)");
    }
  }
  AffineSolutionSet out;
  out.ambient_dim = n;
  out.rank = rr.rank;
  out.particular.assign(n, a.field().zero());
  for (std::size_t i = 0; i < rr.pivots.size(); ++i) out.particular[rr.pivots[i]] = rr.reduced(i, n);
  out.basis = nullspace_from_rref(rr, n);
  out.pivots = rr.pivots;
  return out;
}

std::vector<Vector> nullspace(const Matrix& a) { return nullspace_from_rref(rref(a), a.cols()); }

}  // namespace ffdyn

#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cocat/error.hpp"
#include "cocat/scalar.hpp"

namespace cocat {

/// Dense row-major matrix over an exact field. A matrix with `cols`
/// columns is a linear map from a `cols`-dimensional space.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(field)) {}

  static Matrix identity(Field field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
    return m;
  }

  static Matrix from_rows(Field field, std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
      std::size_t j = 0;
      for (long v : row) m(i, j++) = Scalar(field, v);
      ++i;
    }
    return m;
  }

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& e : entries_) {
      if (!e.is_zero()) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  Matrix column(std::size_t j) const {
    Matrix c(field_, rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  Matrix scaled(const Scalar& s) const {
    Matrix m = *this;
    for (auto& e : m.entries_) e *= s;
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix m = a;
    for (std::size_t k = 0; k < m.entries_.size(); ++k) m.entries_[k] += b.entries_[k];
    return m;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix m = a;
    for (std::size_t k = 0; k < m.entries_.size(); ++k) m.entries_[k] -= b.entries_[k];
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_)) throw Error(ErrorKind::FieldMismatch, "matrix product over different fields");
    if (a.cols_ != b.rows_) {
      throw Error(ErrorKind::ShapeMismatch, "product of " + a.shape() + " and " + b.shape());
    }
    Matrix m(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Scalar& bkj = b(k, j);
          if (!bkj.is_zero()) m(i, j).add_product(aik, bkj);
        }
      }
    }
    return m;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_)) throw Error(ErrorKind::FieldMismatch, "matrix sum over different fields");
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw Error(ErrorKind::ShapeMismatch, "sum of " + a.shape() + " and " + b.shape());
    }
  }

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

/// First (row, col) where two equally shaped matrices differ.
inline std::optional<std::pair<std::size_t, std::size_t>> first_difference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "comparing " + a.shape() + " with " + b.shape());
  }
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!(a(i, j) == b(i, j))) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Pivot search is leftmost column first, then
/// the first row at or below the current one with a nonzero entry.
inline Echelon rref(Matrix m) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m(sel, c).is_zero()) ++sel;
    if (sel == rows) continue;
    if (sel != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(sel, j), m(r, j));
    }
    Scalar inv = m(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar factor = -m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (!m(r, j).is_zero()) m(i, j).add_product(factor, m(r, j));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

struct KernelBasis {
  Matrix matrix;  // columns span the null space
  std::vector<std::size_t> pivot_cols;
};

/// Null space in standard form: one column per free column j of the RREF,
/// with 1 at j, minus the RREF entries at pivot coordinates, 0 elsewhere.
inline KernelBasis kernel(const Matrix& m) {
  Echelon e = rref(m);
  const Field f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  Matrix basis(f, m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t j = free_cols[k];
    basis(j, k) = Scalar::one(f);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.reduced(r, j);
  }
  return {std::move(basis), std::move(e.pivots)};
}

inline Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::Singular, "inverse of non-square " + m.shape());
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::one(m.field());
  }
  Echelon e = rref(aug);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) {
    throw Error(ErrorKind::Singular, "matrix is singular");
  }
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  }
  return inv;
}

/// Left inverse of an injective map. The independent rows of `inj` are
/// the pivot columns of RREF(inj^T); the square block on those rows is
/// inverted and every other row of the domain is sent to zero.
inline Matrix retraction_for_injection(const Matrix& inj) {
  const std::size_t k = inj.cols();
  Echelon e = rref(inj.transpose());
  if (e.pivots.size() < k) {
    throw Error(ErrorKind::NotInjective,
                "column rank " + std::to_string(e.pivots.size()) + " < " + std::to_string(k));
  }
  Matrix block(inj.field(), k, k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t j = 0; j < k; ++j) block(r, j) = inj(e.pivots[r], j);
  }
  Matrix block_inv = inverse(block);
  Matrix pi(inj.field(), k, inj.rows());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t r = 0; r < k; ++r) pi(i, e.pivots[r]) = block_inv(i, r);
  }
  return pi;
}

/// Kronecker product; the first factor is the major index:
/// (a ⊗ b)(ia*rb + ib, ja*cb + jb) = a(ia, ja) * b(ib, jb).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "kron over different fields");
  Matrix m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia) {
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Scalar& s = a(ia, ja);
      if (s.is_zero()) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib) {
        for (std::size_t jb = 0; jb < b.cols(); ++jb) {
          if (!b(ib, jb).is_zero()) m(ia * b.rows() + ib, ja * b.cols() + jb) = s * b(ib, jb);
        }
      }
    }
  }
  return m;
}

/// Applies `op` to tensor factor `pos` of the rows of `m`, where the rows
/// of `m` index the major-first tensor product of spaces of dimensions
/// `dims`. Equivalent to (1 ⊗ ... ⊗ op ⊗ ... ⊗ 1) * m without forming the
/// Kronecker product.
inline Matrix apply_factor(const Matrix& m, std::span<const std::size_t> dims, std::size_t pos, const Matrix& op) {
  std::size_t outer = 1;
  std::size_t inner = 1;
  for (std::size_t i = 0; i < pos; ++i) outer *= dims[i];
  for (std::size_t i = pos + 1; i < dims.size(); ++i) inner *= dims[i];
  if (op.cols() != dims[pos] || outer * dims[pos] * inner != m.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "tensor factor application of " + op.shape() + " to " + m.shape());
  }
  Matrix out(m.field(), outer * op.rows() * inner, m.cols());
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < op.rows(); ++i) {
      for (std::size_t k = 0; k < op.cols(); ++k) {
        const Scalar& s = op(i, k);
        if (s.is_zero()) continue;
        for (std::size_t t = 0; t < inner; ++t) {
          std::size_t src = (o * op.cols() + k) * inner + t;
          std::size_t dst = (o * op.rows() + i) * inner + t;
          for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!m(src, c).is_zero()) out(dst, c).add_product(s, m(src, c));
          }
        }
      }
    }
  }
  return out;
}

/// Stacks matrices with a common column count on top of each other.
inline Matrix vstack(Field field, std::size_t cols, std::span<const Matrix> blocks) {
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw Error(ErrorKind::ShapeMismatch, "vstack column mismatch");
    rows += b.rows();
  }
  Matrix m(field, rows, cols);
  std::size_t r0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(r0 + i, j) = b(i, j);
    }
    r0 += b.rows();
  }
  return m;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "hstack row mismatch");
  Matrix m(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

/// Whether two column sets span the same subspace.
inline bool same_column_span(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) return false;
  std::size_t ra = rank(a);
  return ra == rank(b) && ra == rank(hstack(a, b));
}

}  // namespace cocat

#pragma once

#include <optional>
#include <vector>

#include "atlas/scalar.hpp"

namespace atlas {

using Vec = std::vector<Scalar>;

/// Dense exact rational matrix; row major.
class MatQ {
 public:
  MatQ() = default;
  MatQ(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Scalar(0)) {}

  static MatQ identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  const Scalar& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  MatQ transposed() const;
  friend MatQ operator*(const MatQ& a, const MatQ& b);
  Vec apply(const Vec& v) const;
  bool operator==(const MatQ& other) const { return rows_ == other.rows_ && cols_ == other.cols_ && a_ == other.a_; }

  /// In-place reduced row echelon form; returns pivot column indices.
  std::vector<size_t> rref();
  size_t rank() const;
  /// Basis of the right kernel, rows in reduced form (deterministic).
  std::vector<Vec> kernel_basis() const;
  /// One solution of A x = b, or nullopt if inconsistent.
  std::optional<Vec> solve(const Vec& b) const;
  /// Inverse of a square matrix, or nullopt if singular.
  std::optional<MatQ> inverse() const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

/// Incremental echelon basis of a growing row space (reduced echelon form).
class RowSpan {
 public:
  explicit RowSpan(size_t cols) : cols_(cols) {}

  size_t dim() const { return rows_.size(); }
  size_t cols() const { return cols_; }

  /// Reduces v against the current span in place; returns true if a new
  /// pivot was added (v was independent).
  bool insert(Vec v);
  /// Residual of v after reduction (zero iff v is in the span).
  Vec reduce(Vec v) const;
  bool contains(const Vec& v) const;
  /// Coordinates of v in the reduced-echelon basis, or nullopt.
  std::optional<Vec> coordinates(const Vec& v) const;

  /// Rows in reduced echelon form, sorted by pivot.
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<size_t>& pivots() const { return pivots_; }

 private:
  size_t cols_;
  std::vector<Vec> rows_;      // kept fully back-substituted
  std::vector<size_t> pivots_; // ascending
};

/// True iff the two row spans are equal as subspaces.
bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, size_t cols);

}  // namespace atlas

#include "atlas/linalg.hpp"

#include <algorithm>

namespace atlas {

MatQ MatQ::identity(size_t n) {
  MatQ m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatQ MatQ::transposed() const {
  MatQ t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

MatQ operator*(const MatQ& a, const MatQ& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix dimension mismatch");
  MatQ m(a.rows(), b.cols());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t k = 0; k < a.cols(); ++k) {
      const Scalar& av = a.at(r, k);
      if (av == 0) continue;
      for (size_t c = 0; c < b.cols(); ++c) {
        const Scalar& bv = b.at(k, c);
        if (bv != 0) m.at(r, c) += av * bv;
      }
    }
  return m;
}

Vec MatQ::apply(const Vec& v) const {
  if (v.size() != cols_) throw InvalidInput("matrix/vector dimension mismatch");
  Vec r(rows_, Scalar(0));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      const Scalar& a = at(i, j);
      if (a != 0 && v[j] != 0) r[i] += a * v[j];
    }
  return r;
}

std::vector<size_t> MatQ::rref() {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < cols_ && row < rows_; ++col) {
    size_t sel = row;
    while (sel < rows_ && at(sel, col) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != row)
      for (size_t c = 0; c < cols_; ++c) std::swap(at(sel, c), at(row, c));
    Scalar inv = 1 / at(row, col);
    for (size_t c = col; c < cols_; ++c) at(row, c) *= inv;
    for (size_t r = 0; r < rows_; ++r) {
      if (r == row) continue;
      Scalar f = at(r, col);
      if (f == 0) continue;
      for (size_t c = col; c < cols_; ++c) at(r, c) -= f * at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

size_t MatQ::rank() const {
  MatQ tmp = *this;
  return tmp.rref().size();
}

std::vector<Vec> MatQ::kernel_basis() const {
  MatQ tmp = *this;
  auto pivots = tmp.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (size_t free_col = 0; free_col < cols_; ++free_col) {
    if (is_pivot[free_col]) continue;
    Vec v(cols_, Scalar(0));
    v[free_col] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -tmp.at(i, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> MatQ::solve(const Vec& b) const {
  if (b.size() != rows_) throw InvalidInput("solve: rhs dimension mismatch");
  MatQ aug(rows_, cols_ + 1);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols_) = b[r];
  }
  auto pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  Vec x(cols_, Scalar(0));
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, cols_);
  return x;
}

std::optional<MatQ> MatQ::inverse() const {
  if (rows_ != cols_) throw InvalidInput("inverse of non-square matrix");
  MatQ aug(rows_, 2 * cols_);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols_ + r) = 1;
  }
  auto pivots = aug.rref();
  if (pivots.size() != rows_ || pivots.back() != rows_ - 1) return std::nullopt;
  MatQ inv(rows_, cols_);
  for (size_t r = 0; r < rows_; ++r)
    for (size_t c = 0; c < cols_; ++c) inv.at(r, c) = aug.at(r, cols_ + c);
  return inv;
}

bool RowSpan::insert(Vec v) {
  if (v.size() != cols_) throw InvalidInput("row span dimension mismatch");
  // Forward reduce.
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& f = v[pivots_[i]];
    if (f == 0) continue;
    Scalar factor = f;  // pivot rows are normalized
    const Vec& row = rows_[i];
    for (size_t c = pivots_[i]; c < cols_; ++c)
      if (row[c] != 0) v[c] -= factor * row[c];
  }
  size_t p = 0;
  while (p < cols_ && v[p] == 0) ++p;
  if (p == cols_) return false;
  Scalar inv = 1 / v[p];
  for (size_t c = p; c < cols_; ++c)
    if (v[c] != 0) v[c] *= inv;
  // Back-substitute into existing rows to keep reduced form.
  for (size_t i = 0; i < rows_.size(); ++i) {
    Scalar f = rows_[i][p];
    if (f == 0) continue;
    for (size_t c = p; c < cols_; ++c)
      if (v[c] != 0) rows_[i][c] -= f * v[c];
  }
  auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

Vec RowSpan::reduce(Vec v) const {
  if (v.size() != cols_) throw InvalidInput("row span dimension mismatch");
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& f = v[pivots_[i]];
    if (f == 0) continue;
    Scalar factor = f;
    const Vec& row = rows_[i];
    for (size_t c = pivots_[i]; c < cols_; ++c)
      if (row[c] != 0) v[c] -= factor * row[c];
  }
  return v;
}

bool RowSpan::contains(const Vec& v) const {
  Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](const Scalar& s) { return s == 0; });
}

std::optional<Vec> RowSpan::coordinates(const Vec& v) const {
  Vec coords(rows_.size(), Scalar(0));
  Vec w = v;
  for (size_t i = 0; i < rows_.size(); ++i) {
    const Scalar& f = w[pivots_[i]];
    if (f == 0) continue;
    coords[i] = f;
    Scalar factor = f;
    const Vec& row = rows_[i];
    for (size_t c = pivots_[i]; c < cols_; ++c)
      if (row[c] != 0) w[c] -= factor * row[c];
  }
  for (const auto& s : w)
    if (s != 0) return std::nullopt;
  return coords;
}

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b, size_t cols) {
  RowSpan sa(cols), sb(cols);
  for (const auto& v : a) sa.insert(v);
  for (const auto& v : b) sb.insert(v);
  if (sa.dim() != sb.dim()) return false;
  for (const auto& v : b)
    if (!sa.contains(v)) return false;
  return true;
}

}  // namespace atlas

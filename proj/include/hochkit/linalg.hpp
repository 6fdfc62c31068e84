#pragma once

// Exact linear algebra over a field: small dense matrices, sparse vectors and
// column-major sparse matrices, and an incremental echelon basis that yields
// the (canonical) reduced row echelon form of a row space.
//
// Element type S must provide field arithmetic, operator==, and a free
// is_zero(S). S{} is the additive zero.

#include <hochkit/field.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hochkit {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Dense

template <class S>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n, const S& one) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("dense product: inner dimensions differ");
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!is_zero(b(k, j))) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("dense sum: shapes differ");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("dense difference: shapes differ");
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  std::vector<S> apply(std::span<const S> x) const {
    if (x.size() != cols_) throw DimensionError("dense apply: vector length mismatch");
    std::vector<S> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!is_zero((*this)(i, j)) && !is_zero(x[j])) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero_matrix() const {
    return std::all_of(data_.begin(), data_.end(), [](const S& s) { return is_zero(s); });
  }

  // Gauss-Jordan; nullopt when singular.
  std::optional<DenseMatrix> inverse(const S& one) const {
    if (rows_ != cols_) throw DimensionError("inverse of a non-square matrix");
    const std::size_t n = rows_;
    DenseMatrix a = *this;
    DenseMatrix inv = identity(n, one);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && is_zero(a(piv, col))) ++piv;
      if (piv == n) return std::nullopt;
      if (piv != col)
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a(piv, j), a(col, j));
          std::swap(inv(piv, j), inv(col, j));
        }
      const S scale = one / a(col, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(col, j) *= scale;
        inv(col, j) *= scale;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || is_zero(a(r, col))) continue;
        const S f = a(r, col);
        for (std::size_t j = 0; j < n; ++j) {
          a(r, j) -= f * a(col, j);
          inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

// ---------------------------------------------------------------------------
// Sparse vectors: entries sorted by index, no explicit zeros.

template <class S>
struct SparseEntry {
  std::size_t index;
  S value;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

template <class S>
class SparseVector {
 public:
  using Entry = SparseEntry<S>;

  SparseVector() = default;

  // Accepts unsorted entries with repeats; sums duplicates and drops zeros.
  static SparseVector from_unsorted(std::vector<Entry> raw) {
    std::stable_sort(raw.begin(), raw.end(),
                     [](const Entry& a, const Entry& b) { return a.index < b.index; });
    SparseVector v;
    for (auto& e : raw) {
      if (!v.entries_.empty() && v.entries_.back().index == e.index) {
        v.entries_.back().value += e.value;
      } else {
        if (!v.entries_.empty() && is_zero(v.entries_.back().value)) v.entries_.pop_back();
        v.entries_.push_back(std::move(e));
      }
    }
    if (!v.entries_.empty() && is_zero(v.entries_.back().value)) v.entries_.pop_back();
    return v;
  }

  static SparseVector from_dense(std::span<const S> dense) {
    SparseVector v;
    for (std::size_t i = 0; i < dense.size(); ++i)
      if (!is_zero(dense[i])) v.entries_.push_back({i, dense[i]});
    return v;
  }

  static SparseVector unit(std::size_t index, const S& value) {
    SparseVector v;
    if (!is_zero(value)) v.entries_.push_back({index, value});
    return v;
  }

  std::vector<S> to_dense(std::size_t length) const {
    std::vector<S> out(length);
    for (const auto& e : entries_) {
      if (e.index >= length) throw DimensionError("sparse vector index out of range");
      out[e.index] = e.value;
    }
    return out;
  }

  const S* find(std::size_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.index < i; });
    if (it == entries_.end() || it->index != index) return nullptr;
    return &it->value;
  }

  S at(std::size_t index) const {
    const S* p = find(index);
    return p ? *p : S{};
  }

  std::size_t nnz() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t leading_index() const { return entries_.front().index; }

  void scale(const S& alpha) {
    if (is_zero(alpha)) {
      entries_.clear();
      return;
    }
    for (auto& e : entries_) e.value *= alpha;
  }

  // this += alpha * other
  void axpy(const S& alpha, const SparseVector& other) {
    if (is_zero(alpha) || other.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
        out.push_back(std::move(*a++));
      } else if (a == entries_.end() || b->index < a->index) {
        out.push_back({b->index, alpha * b->value});
        ++b;
      } else {
        S s = a->value + alpha * b->value;
        if (!is_zero(s)) out.push_back({a->index, std::move(s)});
        ++a;
        ++b;
      }
    }
    entries_ = std::move(out);
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

template <class S>
std::vector<S> dense_axpy(std::vector<S> y, const S& alpha, std::span<const S> x) {
  if (x.size() != y.size()) throw DimensionError("axpy: length mismatch");
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!is_zero(x[i])) y[i] += alpha * x[i];
  return y;
}

template <class S>
bool all_zero(std::span<const S> v) {
  return std::all_of(v.begin(), v.end(), [](const S& s) { return is_zero(s); });
}

// ---------------------------------------------------------------------------
// Column-major sparse matrix

template <class S>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), columns_(cols) {}
  SparseMatrix(std::size_t rows, std::vector<SparseVector<S>> columns)
      : rows_(rows), cols_(columns.size()), columns_(std::move(columns)) {}

  static SparseMatrix identity(std::size_t n, const S& one) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i] = SparseVector<S>::unit(i, one);
    return m;
  }

  static SparseMatrix from_dense(const DenseMatrix<S>& d) {
    SparseMatrix m(d.rows(), d.cols());
    for (std::size_t j = 0; j < d.cols(); ++j) {
      std::vector<SparseEntry<S>> col;
      for (std::size_t i = 0; i < d.rows(); ++i)
        if (!is_zero(d(i, j))) col.push_back({i, d(i, j)});
      m.columns_[j] = SparseVector<S>::from_unsorted(std::move(col));
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const SparseVector<S>& column(std::size_t j) const { return columns_[j]; }
  void set_column(std::size_t j, SparseVector<S> c) { columns_[j] = std::move(c); }
  const std::vector<SparseVector<S>>& columns() const { return columns_; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.nnz();
    return n;
  }

  bool is_zero_matrix() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
  }

  SparseVector<S> apply(const SparseVector<S>& x) const {
    std::vector<SparseEntry<S>> acc;
    for (const auto& xe : x) {
      if (xe.index >= cols_) throw DimensionError("sparse apply: index out of range");
      for (const auto& ce : columns_[xe.index]) acc.push_back({ce.index, xe.value * ce.value});
    }
    return SparseVector<S>::from_unsorted(std::move(acc));
  }

  std::vector<S> apply(std::span<const S> x) const {
    if (x.size() != cols_) throw DimensionError("sparse apply: vector length mismatch");
    std::vector<S> y(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (is_zero(x[j])) continue;
      for (const auto& e : columns_[j]) y[e.index] += x[j] * e.value;
    }
    return y;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("sparse product: inner dimensions differ");
    SparseMatrix c(a.rows_, b.cols_);
    for (std::size_t j = 0; j < b.cols_; ++j) c.columns_[j] = a.apply(b.columns_[j]);
    return c;
  }

  void scale(const S& alpha) {
    for (auto& c : columns_) c.scale(alpha);
  }

  // this += alpha * other
  void axpy(const S& alpha, const SparseMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("sparse axpy: shapes differ");
    for (std::size_t j = 0; j < cols_; ++j) columns_[j].axpy(alpha, other.columns_[j]);
  }

  SparseMatrix transpose() const {
    std::vector<std::vector<SparseEntry<S>>> rows(rows_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& e : columns_[j]) rows[e.index].push_back({j, e.value});
    SparseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) t.columns_[i] = SparseVector<S>::from_unsorted(std::move(rows[i]));
    return t;
  }

  // Keeps the listed rows (renumbered in the given order).
  SparseMatrix select_rows(std::span<const std::size_t> keep) const {
    std::vector<std::int64_t> remap(rows_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<std::int64_t>(i);
    SparseMatrix m(keep.size(), cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      std::vector<SparseEntry<S>> col;
      for (const auto& e : columns_[j])
        if (remap[e.index] >= 0) col.push_back({static_cast<std::size_t>(remap[e.index]), e.value});
      m.columns_[j] = SparseVector<S>::from_unsorted(std::move(col));
    }
    return m;
  }

  DenseMatrix<S> to_dense() const {
    DenseMatrix<S> d(rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& e : columns_[j]) d(e.index, j) = e.value;
    return d;
  }

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVector<S>> columns_;
};

// Kronecker product of sparse matrices: (A ⊗ B)[(i,k),(j,l)] = A[i,j] B[k,l],
// with row-major flattening of the index pairs.
template <class S>
SparseMatrix<S> kronecker(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  SparseMatrix<S> k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t l = 0; l < b.cols(); ++l) {
      std::vector<SparseEntry<S>> col;
      col.reserve(a.column(j).nnz() * b.column(l).nnz());
      for (const auto& ea : a.column(j))
        for (const auto& eb : b.column(l)) col.push_back({ea.index * b.rows() + eb.index, ea.value * eb.value});
      k.set_column(j * b.cols() + l, SparseVector<S>::from_unsorted(std::move(col)));
    }
  return k;
}

// ---------------------------------------------------------------------------
// Echelon basis of a row space.
//
// Rows are kept with their lowest nonzero column as pivot, normalized to 1.
// After finalize() every pivot column is zero in all other rows, which makes
// the basis the reduced row echelon form of the span: independent of the
// insertion order.

template <class S>
class Echelon {
 public:
  explicit Echelon(std::size_t width) : width_(width), pivot_row_(width, -1) {}

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  bool finalized() const { return finalized_; }

  // Remainder of v after eliminating every pivot column.
  SparseVector<S> reduce(const SparseVector<S>& v) const {
    std::map<std::size_t, S> acc;
    for (const auto& e : v) {
      if (e.index >= width_) throw DimensionError("echelon: vector index out of range");
      acc.emplace(e.index, e.value);
    }
    sweep(acc);
    std::vector<SparseEntry<S>> out;
    out.reserve(acc.size());
    for (auto& [i, s] : acc) out.push_back({i, std::move(s)});
    return SparseVector<S>::from_unsorted(std::move(out));
  }

  bool contains(const SparseVector<S>& v) const { return reduce(v).empty(); }

  // Adds v to the span; false when v was already in it.
  bool insert(const SparseVector<S>& v) {
    SparseVector<S> r = reduce(v);
    if (r.empty()) return false;
    const S lead = r.begin()->value;
    const S unit = lead / lead;
    r.scale(unit / lead);
    const std::size_t pivot = r.leading_index();
    pivot_row_[pivot] = static_cast<std::int64_t>(rows_.size());
    pivots_.push_back(pivot);
    rows_.push_back(std::move(r));
    finalized_ = false;
    return true;
  }

  void finalize() {
    if (finalized_) return;
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    std::vector<SparseVector<S>> rows;
    std::vector<std::size_t> pivots;
    rows.reserve(rows_.size());
    for (std::size_t i : order) {
      rows.push_back(std::move(rows_[i]));
      pivots.push_back(pivots_[i]);
    }
    rows_ = std::move(rows);
    pivots_ = std::move(pivots);
    for (std::size_t i = 0; i < rows_.size(); ++i) pivot_row_[pivots_[i]] = static_cast<std::int64_t>(i);
    // Back substitution from the highest pivot down: rows with larger pivots
    // are already clean, so subtracting them never reintroduces a pivot.
    for (std::size_t k = rows_.size(); k-- > 0;) {
      std::vector<std::pair<std::size_t, S>> hits;
      for (const auto& e : rows_[k])
        if (e.index != pivots_[k] && pivot_row_[e.index] >= 0) hits.emplace_back(e.index, e.value);
      for (const auto& [col, factor] : hits)
        rows_[k].axpy(-factor, rows_[static_cast<std::size_t>(pivot_row_[col])]);
    }
    finalized_ = true;
  }

  const std::vector<SparseVector<S>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }

  // Nullspace of the row space, one vector per free column (ascending), with
  // value 1 at its free column and 0 at the other free columns.
  std::vector<SparseVector<S>> kernel_basis(const S& one) const {
    if (!finalized_) throw std::logic_error("echelon: kernel requires finalize()");
    std::vector<std::vector<SparseEntry<S>>> acc(width_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& e : rows_[r])
        if (e.index != pivots_[r]) acc[e.index].push_back({pivots_[r], -e.value});
    std::vector<SparseVector<S>> basis;
    for (std::size_t c = 0; c < width_; ++c) {
      if (pivot_row_[c] >= 0) continue;
      acc[c].push_back({c, one});
      basis.push_back(SparseVector<S>::from_unsorted(std::move(acc[c])));
    }
    return basis;
  }

 private:
  void sweep(std::map<std::size_t, S>& acc) const {
    auto it = acc.begin();
    while (it != acc.end()) {
      const std::size_t col = it->first;
      const std::int64_t r = pivot_row_[col];
      if (r < 0) {
        ++it;
        continue;
      }
      const S factor = it->second;
      for (const auto& e : rows_[static_cast<std::size_t>(r)]) {
        auto [pos, inserted] = acc.try_emplace(e.index);
        pos->second -= factor * e.value;
        if (is_zero(pos->second)) acc.erase(pos);
      }
      it = acc.upper_bound(col);
    }
  }

  std::size_t width_;
  std::vector<std::int64_t> pivot_row_;
  std::vector<SparseVector<S>> rows_;
  std::vector<std::size_t> pivots_;
  bool finalized_ = true;
};

// ---------------------------------------------------------------------------
// Derived routines

template <class S>
Echelon<S> row_space(const SparseMatrix<S>& m) {
  const SparseMatrix<S> t = m.transpose();
  Echelon<S> e(m.cols());
  for (const auto& row : t.columns()) e.insert(row);
  e.finalize();
  return e;
}

template <class S>
Echelon<S> column_space(const SparseMatrix<S>& m) {
  Echelon<S> e(m.rows());
  for (const auto& col : m.columns()) e.insert(col);
  e.finalize();
  return e;
}

template <class S>
std::size_t rank(const SparseMatrix<S>& m) {
  return m.cols() <= m.rows() ? column_space(m).rank() : row_space(m).rank();
}

template <class S>
std::vector<SparseVector<S>> kernel(const SparseMatrix<S>& m, const S& one) {
  return row_space(m).kernel_basis(one);
}

// Solution of m·x = b from the reduced echelon form of [m | b], free
// variables set to zero; nullopt when inconsistent.
template <class S>
std::optional<SparseVector<S>> solve(const SparseMatrix<S>& m, const SparseVector<S>& b) {
  const std::size_t n = m.cols();
  const SparseMatrix<S> t = m.transpose();
  std::vector<std::vector<SparseEntry<S>>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows[i] = t.column(i).entries();
  for (const auto& e : b) {
    if (e.index >= m.rows()) throw DimensionError("solve: right-hand side index out of range");
    rows[e.index].push_back({n, e.value});
  }
  Echelon<S> ech(n + 1);
  for (auto& r : rows) ech.insert(SparseVector<S>::from_unsorted(std::move(r)));
  ech.finalize();
  if (ech.is_pivot(n)) return std::nullopt;
  std::vector<SparseEntry<S>> x;
  for (std::size_t r = 0; r < ech.rank(); ++r) {
    const S* rhs = ech.rows()[r].find(n);
    if (rhs) x.push_back({ech.pivots()[r], *rhs});
  }
  return SparseVector<S>::from_unsorted(std::move(x));
}

}  // namespace hochkit

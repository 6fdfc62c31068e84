#pragma once

// Finite-dimensional associative algebras given by structure constants
// e_i·e_j = Σ_k c[i][j][k] e_k, and bimodules over them.

#include <hochkit/linalg.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hochkit {

class AlgebraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class S>
struct StructureConstant {
  std::size_t i, j, k;
  S value;
};

// Result of validate_algebra: the lexicographically first basis triple whose
// two bracketings differ, with both expansions.
template <class S>
struct AssociativityReport {
  bool ok = true;
  std::size_t i = 0, j = 0, l = 0;
  std::vector<S> left;   // (e_i e_j) e_l
  std::vector<S> right;  // e_i (e_j e_l)
};

template <class Field>
class Algebra {
 public:
  using Scalar = typename Field::value_type;
  using Vector = std::vector<Scalar>;

  // Accepts repeated triples (summed). Does not check associativity; see
  // validate_algebra().
  Algebra(Field field, std::vector<std::string> labels, std::vector<StructureConstant<Scalar>> constants)
      : field_(std::move(field)), labels_(std::move(labels)), dim_(labels_.size()) {
    if (dim_ == 0) throw AlgebraError("algebra dimension must be positive");
    std::vector<std::vector<SparseEntry<Scalar>>> raw(dim_ * dim_);
    for (auto& c : constants) {
      if (c.i >= dim_ || c.j >= dim_ || c.k >= dim_)
        throw AlgebraError("structure constant index out of range: (" + std::to_string(c.i) + "," +
                           std::to_string(c.j) + "," + std::to_string(c.k) + ")");
      raw[c.i * dim_ + c.j].push_back({c.k, std::move(c.value)});
    }
    products_.reserve(dim_ * dim_);
    for (auto& r : raw) products_.push_back(SparseVector<Scalar>::from_unsorted(std::move(r)));
    factorizations_.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (const auto& e : products_[i * dim_ + j]) factorizations_[e.index].push_back({i, j, e.index, e.value});
  }

  const Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }

  // e_i·e_j as a sparse coordinate vector.
  const SparseVector<Scalar>& product(std::size_t i, std::size_t j) const { return products_[i * dim_ + j]; }

  // All (i, j, k, c[i][j][k]) with c[i][j][k] ≠ 0.
  const std::vector<StructureConstant<Scalar>>& factorizations(std::size_t k) const { return factorizations_[k]; }

  // Nonzero structure constants in (i, j, k) order.
  std::vector<StructureConstant<Scalar>> structure_constants() const {
    std::vector<StructureConstant<Scalar>> out;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (const auto& e : product(i, j)) out.push_back({i, j, e.index, e.value});
    return out;
  }

  Vector basis_vector(std::size_t i) const {
    Vector v(dim_);
    v.at(i) = field_.one();
    return v;
  }

  Vector multiply(const Vector& a, const Vector& b) const {
    if (a.size() != dim_ || b.size() != dim_)
      throw DimensionError("multiply: expected vectors of length " + std::to_string(dim_));
    Vector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (is_zero(a[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (is_zero(b[j])) continue;
        const Scalar ab = a[i] * b[j];
        for (const auto& e : product(i, j)) out[e.index] += ab * e.value;
      }
    }
    return out;
  }

  // Matrix of z ↦ e_i z.
  DenseMatrix<Scalar> left_multiplication(std::size_t i) const {
    DenseMatrix<Scalar> m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& e : product(i, j)) m(e.index, j) = e.value;
    return m;
  }

  // Matrix of z ↦ z e_i.
  DenseMatrix<Scalar> right_multiplication(std::size_t i) const {
    DenseMatrix<Scalar> m(dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& e : product(j, i)) m(e.index, j) = e.value;
    return m;
  }

 private:
  Field field_;
  std::vector<std::string> labels_;
  std::size_t dim_;
  std::vector<SparseVector<Scalar>> products_;
  std::vector<std::vector<StructureConstant<Scalar>>> factorizations_;
};

template <class Field>
AssociativityReport<typename Field::value_type> validate_algebra(const Algebra<Field>& a) {
  using S = typename Field::value_type;
  const std::size_t d = a.dim();
  AssociativityReport<S> report;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        std::vector<S> left(d), right(d);
        for (const auto& ij : a.product(i, j))
          for (const auto& e : a.product(ij.index, l)) left[e.index] += ij.value * e.value;
        for (const auto& jl : a.product(j, l))
          for (const auto& e : a.product(i, jl.index)) right[e.index] += jl.value * e.value;
        if (left != right) {
          report.ok = false;
          report.i = i;
          report.j = j;
          report.l = l;
          report.left = std::move(left);
          report.right = std::move(right);
          return report;
        }
      }
  return report;
}

// Basis of {z : z e_i = e_i z for all i}, reduced echelon kernel basis.
template <class Field>
std::vector<std::vector<typename Field::value_type>> center(const Algebra<Field>& a) {
  using S = typename Field::value_type;
  const std::size_t d = a.dim();
  std::vector<SparseVector<S>> rows;
  for (std::size_t i = 0; i < d; ++i) {
    const auto comm = a.left_multiplication(i) - a.right_multiplication(i);
    for (std::size_t r = 0; r < d; ++r) {
      std::vector<SparseEntry<S>> row;
      for (std::size_t c = 0; c < d; ++c)
        if (!is_zero(comm(r, c))) row.push_back({c, comm(r, c)});
      rows.push_back(SparseVector<S>::from_unsorted(std::move(row)));
    }
  }
  Echelon<S> ech(d);
  for (const auto& r : rows) ech.insert(r);
  ech.finalize();
  std::vector<std::vector<S>> out;
  for (const auto& k : ech.kernel_basis(a.field().one())) out.push_back(k.to_dense(d));
  return out;
}

// ---------------------------------------------------------------------------
// Bimodules

struct BimoduleReport {
  bool ok = true;
  std::string message;
};

template <class Field>
class Bimodule {
 public:
  using Scalar = typename Field::value_type;
  using Matrix = DenseMatrix<Scalar>;

  // left[i], right[i]: action of e_i on M from the left/right, dim(M)×dim(M).
  Bimodule(std::size_t dim, std::vector<Matrix> left, std::vector<Matrix> right)
      : dim_(dim), left_(std::move(left)), right_(std::move(right)) {
    if (dim_ == 0) throw AlgebraError("bimodule dimension must be positive");
    if (left_.size() != right_.size()) throw AlgebraError("bimodule: left/right action counts differ");
    for (const auto* side : {&left_, &right_})
      for (const auto& m : *side)
        if (m.rows() != dim_ || m.cols() != dim_) throw AlgebraError("bimodule: action matrix has wrong shape");
  }

  // M = A with the multiplication actions.
  static Bimodule regular(const Algebra<Field>& a) {
    std::vector<Matrix> left, right;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      left.push_back(a.left_multiplication(i));
      right.push_back(a.right_multiplication(i));
    }
    return Bimodule(a.dim(), std::move(left), std::move(right));
  }

  std::size_t dim() const { return dim_; }
  std::size_t algebra_dim() const { return left_.size(); }
  const Matrix& left(std::size_t i) const { return left_[i]; }
  const Matrix& right(std::size_t i) const { return right_[i]; }

 private:
  std::size_t dim_;
  std::vector<Matrix> left_;
  std::vector<Matrix> right_;
};

template <class Field>
BimoduleReport validate_bimodule(const Algebra<Field>& a, const Bimodule<Field>& m) {
  using S = typename Field::value_type;
  const std::size_t d = a.dim();
  if (m.algebra_dim() != d) return {false, "bimodule has " + std::to_string(m.algebra_dim()) + " action matrices, algebra dimension is " + std::to_string(d)};
  auto combo = [&](auto side, const SparseVector<S>& v) {
    DenseMatrix<S> acc(m.dim(), m.dim());
    for (const auto& e : v) {
      const auto& mat = (m.*side)(e.index);
      for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) acc(r, c) += e.value * mat(r, c);
    }
    return acc;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const std::string pair = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (m.left(i) * m.left(j) != combo(&Bimodule<Field>::left, a.product(i, j)))
        return {false, "left action is not a representation at " + pair};
      // m·(e_i e_j) = (m·e_i)·e_j, i.e. R(e_i e_j) = R(e_j) R(e_i)
      if (m.right(j) * m.right(i) != combo(&Bimodule<Field>::right, a.product(i, j)))
        return {false, "right action is not a representation at " + pair};
      if (m.left(i) * m.right(j) != m.right(j) * m.left(i))
        return {false, "left and right actions do not commute at " + pair};
    }
  return {};
}

}  // namespace hochkit

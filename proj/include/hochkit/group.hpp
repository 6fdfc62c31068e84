#pragma once

// Finite groups as Cayley tables, their linear actions on algebras (and on
// bimodules), subgroups, and fixed-point subalgebras.

#include <hochkit/algebra.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hochkit {

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GroupReport {
  enum class Failure { none, shape, identity, inverse, associativity };
  Failure failure = Failure::none;
  std::vector<std::size_t> witness;
  std::string message;
  bool ok() const { return failure == Failure::none; }
};

// Unvalidated table data, as read from a document.
struct GroupCandidate {
  std::size_t order = 0;
  std::vector<std::size_t> table;  // row-major, table[a*order+b] = a·b
  std::size_t identity = 0;
};

inline GroupReport validate_group(const GroupCandidate& g) {
  const std::size_t n = g.order;
  auto fail = [](GroupReport::Failure f, std::vector<std::size_t> w, std::string msg) {
    return GroupReport{f, std::move(w), std::move(msg)};
  };
  if (n == 0 || g.table.size() != n * n)
    return fail(GroupReport::Failure::shape, {}, "table must be order×order");
  if (g.identity >= n) return fail(GroupReport::Failure::shape, {g.identity}, "identity index out of range");
  for (std::size_t k = 0; k < g.table.size(); ++k)
    if (g.table[k] >= n) return fail(GroupReport::Failure::shape, {k / n, k % n}, "table entry out of range");
  auto mul = [&](std::size_t a, std::size_t b) { return g.table[a * n + b]; };
  for (std::size_t a = 0; a < n; ++a)
    if (mul(g.identity, a) != a || mul(a, g.identity) != a)
      return fail(GroupReport::Failure::identity, {a}, "identity law fails for element " + std::to_string(a));
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < n && !found; ++b) found = mul(a, b) == g.identity && mul(b, a) == g.identity;
    if (!found) return fail(GroupReport::Failure::inverse, {a}, "element " + std::to_string(a) + " has no inverse");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          return fail(GroupReport::Failure::associativity, {a, b, c},
                      "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                          std::to_string(c) + ")");
  return {};
}

class GroupTable {
 public:
  explicit GroupTable(GroupCandidate g) : order_(g.order), table_(std::move(g.table)), identity_(g.identity) {
    const GroupCandidate probe{order_, table_, identity_};
    if (const auto r = validate_group(probe); !r.ok()) throw GroupError("invalid group: " + r.message);
    inverses_.resize(order_);
    for (std::size_t a = 0; a < order_; ++a)
      for (std::size_t b = 0; b < order_; ++b)
        if (multiply(a, b) == identity_) inverses_[a] = b;
  }

  static GroupTable trivial() { return GroupTable({1, {0}, 0}); }

  static GroupTable cyclic(std::size_t n) {
    GroupCandidate g{n, std::vector<std::size_t>(n * n), 0};
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) g.table[a * n + b] = (a + b) % n;
    return GroupTable(std::move(g));
  }

  // Permutations of {0..k-1} in lexicographic order; element 0 is the identity.
  static GroupTable symmetric(std::size_t k) {
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = i;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    const std::size_t n = perms.size();
    GroupCandidate g{n, std::vector<std::size_t>(n * n), 0};
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<std::size_t> ab(k);
        for (std::size_t i = 0; i < k; ++i) ab[i] = perms[a][perms[b][i]];  // (a∘b)(i)
        g.table[a * n + b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), ab) - perms.begin());
      }
    return GroupTable(std::move(g));
  }

  std::size_t order() const { return order_; }
  std::size_t identity() const { return identity_; }
  std::size_t multiply(std::size_t a, std::size_t b) const { return table_[a * order_ + b]; }
  std::size_t inverse(std::size_t a) const { return inverses_[a]; }
  const std::vector<std::size_t>& table() const { return table_; }

 private:
  std::size_t order_;
  std::vector<std::size_t> table_;
  std::size_t identity_;
  std::vector<std::size_t> inverses_;
};

// Sorted element indices.
struct Subgroup {
  std::vector<std::size_t> elements;
  std::size_t size() const { return elements.size(); }
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

inline bool is_subgroup(const GroupTable& g, const Subgroup& h) {
  if (h.elements.empty()) return false;
  const std::set<std::size_t> s(h.elements.begin(), h.elements.end());
  if (!s.contains(g.identity())) return false;
  for (std::size_t a : s) {
    if (a >= g.order() || !s.contains(g.inverse(a))) return false;
    for (std::size_t b : s)
      if (!s.contains(g.multiply(a, b))) return false;
  }
  return true;
}

inline Subgroup whole_group(const GroupTable& g) {
  Subgroup h;
  for (std::size_t a = 0; a < g.order(); ++a) h.elements.push_back(a);
  return h;
}

inline Subgroup trivial_subgroup(const GroupTable& g) { return Subgroup{{g.identity()}}; }

// Subgroup generated by a set of elements.
inline Subgroup closure(const GroupTable& g, std::vector<std::size_t> generators) {
  std::set<std::size_t> s{g.identity()};
  s.insert(generators.begin(), generators.end());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::size_t> cur(s.begin(), s.end());
    for (std::size_t a : cur)
      for (std::size_t b : cur)
        if (s.insert(g.multiply(a, b)).second) grew = true;
  }
  return Subgroup{{s.begin(), s.end()}};
}

inline constexpr std::size_t kDefaultSubgroupOrderBound = 24;

// Every subgroup, ordered by size then lexicographically.
inline std::vector<Subgroup> enumerate_subgroups(const GroupTable& g,
                                                 std::size_t order_bound = kDefaultSubgroupOrderBound) {
  if (g.order() > order_bound)
    throw GroupError("subgroup enumeration refused: |G| = " + std::to_string(g.order()) + " exceeds bound " +
                     std::to_string(order_bound));
  // Every subgroup is reached from {e} by adjoining one element at a time.
  std::set<std::vector<std::size_t>> seen;
  std::vector<Subgroup> frontier{trivial_subgroup(g)};
  seen.insert(frontier.front().elements);
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& h : frontier)
      for (std::size_t a = 0; a < g.order(); ++a) {
        if (std::binary_search(h.elements.begin(), h.elements.end(), a)) continue;
        auto gens = h.elements;
        gens.push_back(a);
        Subgroup k = closure(g, std::move(gens));
        if (seen.insert(k.elements).second) next.push_back(std::move(k));
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (const auto& e : seen) out.push_back(Subgroup{e});
  std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements < b.elements;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Actions

template <class Field>
struct ActionCandidate {
  using Matrix = DenseMatrix<typename Field::value_type>;
  std::vector<Matrix> phi;                 // one d×d matrix per element
  std::optional<std::vector<Matrix>> rho;  // action on a bimodule, when present
};

// Failing conditions are numbered as in the usual axioms of a linear action
// by algebra automorphisms: (1) φ_e = id, (2) φ_g φ_h = φ_gh, (3) each φ_g is
// an invertible linear map, (4) φ_g(ab) = φ_g(a) φ_g(b). Module conditions
// cover the same axioms for ρ plus equivariance of both module actions.
struct ActionReport {
  enum class Failure { none, shape, identity, composition, invertibility, equivariance, module_identity, module_composition, module_equivariance };
  Failure failure = Failure::none;
  int condition = 0;  // 1..4 for algebra conditions, 0 otherwise
  std::vector<std::size_t> witness;
  std::string message;
  bool ok() const { return failure == Failure::none; }
};

namespace detail {

template <class S>
DenseMatrix<S> combine(const std::vector<DenseMatrix<S>>& mats, std::span<const S> coeffs, std::size_t n) {
  DenseMatrix<S> acc(n, n);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (is_zero(coeffs[k])) continue;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!is_zero(mats[k](r, c))) acc(r, c) += coeffs[k] * mats[k](r, c);
  }
  return acc;
}

}  // namespace detail

template <class Field>
ActionReport validate_action(const Algebra<Field>& a, const GroupTable& g, const ActionCandidate<Field>& act,
                             const Bimodule<Field>* module = nullptr) {
  using S = typename Field::value_type;
  using F = ActionReport::Failure;
  const std::size_t d = a.dim();
  const S one = a.field().one();
  auto fail = [](F f, int cond, std::vector<std::size_t> w, std::string msg) {
    return ActionReport{f, cond, std::move(w), std::move(msg)};
  };
  if (act.phi.size() != g.order())
    return fail(F::shape, 0, {}, "expected " + std::to_string(g.order()) + " action matrices");
  for (std::size_t x = 0; x < g.order(); ++x)
    if (act.phi[x].rows() != d || act.phi[x].cols() != d)
      return fail(F::shape, 0, {x}, "action matrix " + std::to_string(x) + " is not " + std::to_string(d) + "×" + std::to_string(d));

  const auto id = DenseMatrix<S>::identity(d, one);
  if (!(act.phi[g.identity()] == id)) return fail(F::identity, 1, {g.identity()}, "φ_e is not the identity");
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t y = 0; y < g.order(); ++y)
      if (!(act.phi[x] * act.phi[y] == act.phi[g.multiply(x, y)]))
        return fail(F::composition, 2, {x, y},
                    "φ_" + std::to_string(x) + "·φ_" + std::to_string(y) + " ≠ φ_" + std::to_string(g.multiply(x, y)));
  for (std::size_t x = 0; x < g.order(); ++x)
    if (!act.phi[x].inverse(one)) return fail(F::invertibility, 3, {x}, "φ_" + std::to_string(x) + " is singular");
  for (std::size_t x = 0; x < g.order(); ++x) {
    const auto& phi = act.phi[x];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<S> gi(d), gj(d);
        for (std::size_t r = 0; r < d; ++r) {
          gi[r] = phi(r, i);
          gj[r] = phi(r, j);
        }
        const auto lhs = a.multiply(gi, gj);
        const auto rhs = phi.apply(a.product(i, j).to_dense(d));
        if (lhs != rhs)
          return fail(F::equivariance, 4, {x, i, j},
                      "μ(g·e_" + std::to_string(i) + ", g·e_" + std::to_string(j) + ") ≠ g·μ(e_" + std::to_string(i) +
                          ", e_" + std::to_string(j) + ") for g = " + std::to_string(x));
      }
  }

  if (act.rho) {
    if (!module) return fail(F::shape, 0, {}, "module matrices given without a bimodule");
    const std::size_t m = module->dim();
    const auto& rho = *act.rho;
    if (rho.size() != g.order()) return fail(F::shape, 0, {}, "expected one module matrix per group element");
    for (std::size_t x = 0; x < g.order(); ++x)
      if (rho[x].rows() != m || rho[x].cols() != m)
        return fail(F::shape, 0, {x}, "module matrix " + std::to_string(x) + " has wrong shape");
    if (!(rho[g.identity()] == DenseMatrix<S>::identity(m, one)))
      return fail(F::module_identity, 0, {g.identity()}, "ρ_e is not the identity");
    for (std::size_t x = 0; x < g.order(); ++x)
      for (std::size_t y = 0; y < g.order(); ++y)
        if (!(rho[x] * rho[y] == rho[g.multiply(x, y)]))
          return fail(F::module_composition, 0, {x, y}, "ρ is not a homomorphism");
    std::vector<DenseMatrix<S>> left, right;
    for (std::size_t i = 0; i < d; ++i) {
      left.push_back(module->left(i));
      right.push_back(module->right(i));
    }
    // ρ_g(e_i·v) = (φ_g e_i)·ρ_g(v), and the same on the right.
    for (std::size_t x = 0; x < g.order(); ++x)
      for (std::size_t i = 0; i < d; ++i) {
        std::vector<S> gi(d);
        for (std::size_t r = 0; r < d; ++r) gi[r] = act.phi[x](r, i);
        if (!(rho[x] * left[i] == detail::combine<S>(left, gi, m) * rho[x]))
          return fail(F::module_equivariance, 0, {x, i}, "left module action is not equivariant");
        if (!(rho[x] * right[i] == detail::combine<S>(right, gi, m) * rho[x]))
          return fail(F::module_equivariance, 0, {x, i}, "right module action is not equivariant");
      }
  }
  return {};
}

// A validated action of a finite group on an algebra, with the compatible
// action on a coefficient bimodule (the algebra itself when rho is absent).
template <class Field>
class ActionRep {
 public:
  using Scalar = typename Field::value_type;
  using Matrix = DenseMatrix<Scalar>;

  ActionRep(const Algebra<Field>& a, GroupTable group, ActionCandidate<Field> act,
            const Bimodule<Field>* module = nullptr)
      : group_(std::move(group)), phi_(std::move(act.phi)), rho_(std::move(act.rho)) {
    const ActionCandidate<Field> probe{phi_, rho_};
    if (const auto r = validate_action(a, group_, probe, module); !r.ok())
      throw GroupError("invalid action: " + r.message);
    const auto one = a.field().one();
    for (const auto& p : phi_) phi_inverse_.push_back(*p.inverse(one));
  }

  static ActionRep trivial(const Algebra<Field>& a) {
    return ActionRep(a, GroupTable::trivial(),
                     ActionCandidate<Field>{{Matrix::identity(a.dim(), a.field().one())}, std::nullopt});
  }

  const GroupTable& group() const { return group_; }
  const Matrix& phi(std::size_t g) const { return phi_[g]; }
  const Matrix& phi_inverse(std::size_t g) const { return phi_inverse_[g]; }
  const std::vector<Matrix>& matrices() const { return phi_; }
  bool has_module_action() const { return rho_.has_value(); }
  const std::optional<std::vector<Matrix>>& module_matrices() const { return rho_; }

  // Action on the coefficient module: ρ_g, or φ_g when M = A.
  const Matrix& module_matrix(std::size_t g) const { return rho_ ? (*rho_)[g] : phi_[g]; }

 private:
  GroupTable group_;
  std::vector<Matrix> phi_;
  std::optional<std::vector<Matrix>> rho_;
  std::vector<Matrix> phi_inverse_;
};

// ---------------------------------------------------------------------------
// Fixed points

template <class Field>
struct FixedPointSubalgebra {
  using Scalar = typename Field::value_type;
  std::vector<std::vector<Scalar>> basis;  // vectors in A, reduced kernel basis
  std::vector<std::size_t> coordinates;    // coordinate of v ∈ A^H on basis[k] is v[coordinates[k]]
  Algebra<Field> algebra;
  DenseMatrix<Scalar> inclusion;  // d × dim A^H
};

// Coordinates of v in the fixed-space basis; nullopt when v is not in the span.
template <class Field>
std::optional<std::vector<typename Field::value_type>> fixed_coordinates(const FixedPointSubalgebra<Field>& f,
                                                                          const std::vector<typename Field::value_type>& v) {
  using S = typename Field::value_type;
  std::vector<S> coords(f.coordinates.size());
  std::vector<S> rebuilt(v.size());
  for (std::size_t k = 0; k < coords.size(); ++k) {
    coords[k] = v[f.coordinates[k]];
    rebuilt = dense_axpy<S>(std::move(rebuilt), coords[k], f.basis[k]);
  }
  if (rebuilt != v) return std::nullopt;
  return coords;
}

template <class Field>
FixedPointSubalgebra<Field> fixed_point_subalgebra(const Algebra<Field>& a, const ActionRep<Field>& act,
                                                   const Subgroup& h) {
  using S = typename Field::value_type;
  if (!is_subgroup(act.group(), h)) throw GroupError("fixed_point_subalgebra: not a subgroup");
  const std::size_t d = a.dim();
  const S one = a.field().one();
  Echelon<S> ech(d);
  for (std::size_t x : h.elements) {
    const auto diff = act.phi(x) - DenseMatrix<S>::identity(d, one);
    for (std::size_t r = 0; r < d; ++r) {
      std::vector<SparseEntry<S>> row;
      for (std::size_t c = 0; c < d; ++c)
        if (!is_zero(diff(r, c))) row.push_back({c, diff(r, c)});
      ech.insert(SparseVector<S>::from_unsorted(std::move(row)));
    }
  }
  ech.finalize();
  std::vector<std::vector<S>> basis;
  std::vector<std::size_t> coords;
  for (std::size_t c = 0; c < d; ++c)
    if (!ech.is_pivot(c)) coords.push_back(c);
  for (const auto& k : ech.kernel_basis(one)) basis.push_back(k.to_dense(d));
  const std::size_t h_dim = basis.size();

  DenseMatrix<S> inclusion(d, h_dim);
  for (std::size_t k = 0; k < h_dim; ++k)
    for (std::size_t r = 0; r < d; ++r) inclusion(r, k) = basis[k][r];

  std::vector<std::string> labels;
  for (std::size_t k = 0; k < h_dim; ++k) {
    std::string label;
    for (std::size_t r = 0; r < d; ++r) {
      if (is_zero(basis[k][r])) continue;
      if (!label.empty()) label += "+";
      const std::string coef = a.field().format(basis[k][r]);
      label += (coef == "1" ? "" : coef + "*") + a.labels()[r];
    }
    labels.push_back(label);
  }
  if (h_dim == 0) throw GroupError("fixed-point space is zero");

  FixedPointSubalgebra<Field> partial{basis, coords, Algebra<Field>(a.field(), labels, {}), inclusion};
  std::vector<StructureConstant<S>> constants;
  for (std::size_t p = 0; p < h_dim; ++p)
    for (std::size_t q = 0; q < h_dim; ++q) {
      const auto prod = a.multiply(basis[p], basis[q]);
      const auto c = fixed_coordinates(partial, prod);
      if (!c) throw std::logic_error("fixed-point subspace is not closed under multiplication");
      for (std::size_t k = 0; k < h_dim; ++k)
        if (!is_zero((*c)[k])) constants.push_back({p, q, k, (*c)[k]});
    }
  partial.algebra = Algebra<Field>(a.field(), labels, std::move(constants));
  return partial;
}

}  // namespace hochkit

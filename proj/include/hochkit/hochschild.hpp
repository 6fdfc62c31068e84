#pragma once

// Hochschild cochains C^n(A;M) = Hom(A^⊗n, M), the coboundary δ, the
// subcomplex of G-invariant cochains, and (equivariant) cohomology.
//
// Coordinate convention (version tag kCochainConvention): the coefficient of
// output basis vector f_k on the input tuple (e_{i1},…,e_{in}) sits at flat
// index k·d^n + Σ_t i_t·d^{n−t}, i.e. the row-major flattening of the
// dim(M) × d^n matrix of the cochain.

#include <hochkit/group.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hochkit {

inline constexpr const char* kCochainConvention = "hochkit-cochain-v1";

class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvarianceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Limits {
  std::size_t max_degree = 4;
  std::size_t max_coeffs = 1'000'000;
};

// m·d^n, refusing anything above limits.max_coeffs.
inline std::size_t cochain_dim(std::size_t d, std::size_t m, std::size_t n, const Limits& limits = {}) {
  auto refuse = [&] {
    return SizeError("cochain space of degree " + std::to_string(n) + " exceeds the size bound of " +
                     std::to_string(limits.max_coeffs) + " coefficients");
  };
  if (m > limits.max_coeffs) throw refuse();
  std::size_t total = m;
  for (std::size_t t = 0; t < n; ++t) {
    if (d != 0 && total > limits.max_coeffs / d) throw refuse();
    total *= d;
  }
  return total;
}

inline std::size_t int_pow(std::size_t base, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= base;
  return r;
}

// (output index, input tuple) of a flat cochain coordinate.
inline std::vector<std::size_t> decode_cochain_index(std::size_t flat, std::size_t d, std::size_t n) {
  std::vector<std::size_t> out(n + 1);
  for (std::size_t t = n; t >= 1; --t) {
    out[t] = flat % d;
    flat /= d;
  }
  out[0] = flat;
  return out;
}

inline std::size_t encode_cochain_index(std::size_t output, std::span<const std::size_t> inputs, std::size_t d) {
  std::size_t flat = output;
  for (std::size_t i : inputs) flat = flat * d + i;
  return flat;
}

template <class S>
struct Cochain {
  std::size_t degree = 0;
  std::size_t algebra_dim = 0;
  std::size_t module_dim = 0;
  std::vector<S> coefficients;

  static Cochain zero(std::size_t n, std::size_t d, std::size_t m) { return {n, d, m, std::vector<S>(int_pow(d, n) * m)}; }

  S& at(std::size_t output, std::span<const std::size_t> inputs) {
    return coefficients[encode_cochain_index(output, inputs, algebra_dim)];
  }
  const S& at(std::size_t output, std::span<const std::size_t> inputs) const {
    return coefficients[encode_cochain_index(output, inputs, algebra_dim)];
  }
  bool is_zero_cochain() const { return all_zero<S>(coefficients); }
  friend bool operator==(const Cochain&, const Cochain&) = default;
};

// ---------------------------------------------------------------------------
// Coboundary
//
// δf(x_1,…,x_{n+1}) = x_1 f(x_2,…) + Σ_{i=1..n} (−1)^i f(…, x_i x_{i+1}, …)
//                     + (−1)^{n+1} f(x_1,…,x_n) x_{n+1}
// At n = 0 this is δm(x) = xm − mx.

template <class Field>
class CoboundaryBuilder {
 public:
  using S = typename Field::value_type;

  CoboundaryBuilder(const Algebra<Field>& a, const Bimodule<Field>& m) : a_(&a), m_(&m) {
    const std::size_t d = a.dim();
    for (std::size_t x = 0; x < d; ++x) {
      left_cols_.push_back(SparseMatrix<S>::from_dense(m.left(x)));
      right_cols_.push_back(SparseMatrix<S>::from_dense(m.right(x)));
    }
  }

  // δ applied to the unit cochain at flat index j of degree n.
  SparseVector<S> column(std::size_t n, std::size_t j) const {
    const std::size_t d = a_->dim();
    const std::size_t dn = int_pow(d, n);
    const std::size_t k = j / dn;
    const std::size_t tuple = j % dn;
    const std::size_t dn1 = dn * d;
    const S one = a_->field().one();
    const S minus_one = -one;
    std::vector<SparseEntry<S>> out;

    // x_1 f(x_2, …)
    for (std::size_t x = 0; x < d; ++x)
      for (const auto& e : left_cols_[x].column(k)) out.push_back({e.index * dn1 + x * dn + tuple, e.value});

    // (−1)^t f(…, x_t x_{t+1}, …)
    std::vector<std::size_t> digits(n);
    {
      std::size_t rest = tuple;
      for (std::size_t t = n; t-- > 0;) {
        digits[t] = rest % d;
        rest /= d;
      }
    }
    for (std::size_t t = 1; t <= n; ++t) {
      const S& sign = (t % 2 == 1) ? minus_one : one;
      std::size_t prefix = 0;
      for (std::size_t s = 0; s + 1 < t; ++s) prefix = prefix * d + digits[s];
      std::size_t suffix = 0;
      for (std::size_t s = t; s < n; ++s) suffix = suffix * d + digits[s];
      const std::size_t suffix_scale = int_pow(d, n - t);
      for (const auto& f : a_->factorizations(digits[t - 1])) {
        const std::size_t idx = ((prefix * d + f.i) * d + f.j) * suffix_scale + suffix;
        out.push_back({k * dn1 + idx, sign * f.value});
      }
    }

    // (−1)^{n+1} f(x_1, …, x_n) x_{n+1}
    const S& last_sign = (n % 2 == 0) ? minus_one : one;
    for (std::size_t x = 0; x < d; ++x)
      for (const auto& e : right_cols_[x].column(k)) out.push_back({e.index * dn1 + tuple * d + x, last_sign * e.value});

    return SparseVector<S>::from_unsorted(std::move(out));
  }

  SparseVector<S> apply(std::size_t n, const SparseVector<S>& f) const {
    std::vector<SparseEntry<S>> acc;
    for (const auto& e : f)
      for (const auto& c : column(n, e.index)) acc.push_back({c.index, e.value * c.value});
    return SparseVector<S>::from_unsorted(std::move(acc));
  }

 private:
  const Algebra<Field>* a_;
  const Bimodule<Field>* m_;
  std::vector<SparseMatrix<S>> left_cols_;
  std::vector<SparseMatrix<S>> right_cols_;
};

// ---------------------------------------------------------------------------
// Invariant cochains

template <class S>
struct InvariantProjector {
  std::size_t degree = 0;
  SparseMatrix<S> matrix;               // P = (1/|G|) Σ_g T_g
  std::vector<SparseVector<S>> basis;   // reduced echelon basis of im P
  std::vector<std::size_t> pivots;      // pivots[j]: coordinate where basis[j] is 1 and the others vanish
};

// Matrix of c ↦ g·c with (g·c)(a_1,…,a_n) = ρ_g c(φ_g⁻¹ a_1, …, φ_g⁻¹ a_n):
// T_g = ρ_g ⊗ (φ_{g⁻¹}ᵀ)^{⊗n} on the row-major coordinates.
template <class Field>
SparseMatrix<typename Field::value_type> cochain_action_matrix(const Algebra<Field>& a, const ActionRep<Field>& act,
                                                               std::size_t g, std::size_t n) {
  using S = typename Field::value_type;
  (void)a;
  SparseMatrix<S> acc = SparseMatrix<S>::from_dense(act.module_matrix(g));
  const auto inv_t = SparseMatrix<S>::from_dense(act.phi_inverse(g).transpose());
  for (std::size_t t = 0; t < n; ++t) acc = kronecker(acc, inv_t);
  return acc;
}

template <class Field>
InvariantProjector<typename Field::value_type> invariant_projector(const Algebra<Field>& a, const ActionRep<Field>& act,
                                                                   std::size_t module_dim, std::size_t n,
                                                                   const Limits& limits = {}) {
  using S = typename Field::value_type;
  const auto& field = a.field();
  const std::size_t order = act.group().order();
  if (!order_invertible(field, order))
    throw FieldError("averaging over G refused: |G| = " + std::to_string(order) + " is not invertible in " + field.name());
  const std::size_t dim = cochain_dim(a.dim(), module_dim, n, limits);
  InvariantProjector<S> proj;
  proj.degree = n;
  if (order == 1) {
    proj.matrix = SparseMatrix<S>::identity(dim, field.one());
    for (std::size_t i = 0; i < dim; ++i) {
      proj.basis.push_back(SparseVector<S>::unit(i, field.one()));
      proj.pivots.push_back(i);
    }
    return proj;
  }
  SparseMatrix<S> sum(dim, dim);
  for (std::size_t g = 0; g < order; ++g) sum.axpy(field.one(), cochain_action_matrix(a, act, g, n));
  sum.scale(field.one() / field.from_int(static_cast<long>(order)));
  proj.matrix = std::move(sum);
  Echelon<S> image = column_space(proj.matrix);
  proj.basis = image.rows();
  proj.pivots = image.pivots();
  return proj;
}

// The invariant cochains computed independently of averaging, as the common
// kernel of c ↦ c∘(φ_g ⊗ … ⊗ φ_g) − ρ_g∘c over all g.
template <class Field>
std::vector<SparseVector<typename Field::value_type>> invariant_cochains_by_constraints(
    const Algebra<Field>& a, const ActionRep<Field>& act, std::size_t module_dim, std::size_t n,
    const Limits& limits = {}) {
  using S = typename Field::value_type;
  const auto one = a.field().one();
  const std::size_t dim = cochain_dim(a.dim(), module_dim, n, limits);
  const std::size_t dn = int_pow(a.dim(), n);
  Echelon<S> ech(dim);
  for (std::size_t g = 0; g < act.group().order(); ++g) {
    SparseMatrix<S> tensor = SparseMatrix<S>::identity(1, one);
    const auto phi_t = SparseMatrix<S>::from_dense(act.phi(g).transpose());
    for (std::size_t t = 0; t < n; ++t) tensor = kronecker(tensor, phi_t);
    SparseMatrix<S> k = kronecker(SparseMatrix<S>::identity(module_dim, one), tensor);
    k.axpy(-one, kronecker(SparseMatrix<S>::from_dense(act.module_matrix(g)), SparseMatrix<S>::identity(dn, one)));
    const auto rows = k.transpose();
    for (const auto& row : rows.columns()) ech.insert(row);
  }
  ech.finalize();
  return ech.kernel_basis(one);
}

// ---------------------------------------------------------------------------
// Cohomology

template <class S>
struct CohomologyReport {
  std::size_t degree = 0;
  bool equivariant = false;
  std::size_t dim_cochains = 0;  // of the (invariant) cochain space
  std::size_t dim_cocycles = 0;
  std::size_t dim_coboundaries = 0;
  std::size_t dim_H = 0;
  std::vector<Cochain<S>> representatives;
};

enum class CochainClass { not_cocycle, nontrivial, coboundary };

inline const char* to_string(CochainClass c) {
  switch (c) {
    case CochainClass::not_cocycle: return "not-cocycle";
    case CochainClass::nontrivial: return "cocycle-nontrivial";
    case CochainClass::coboundary: return "coboundary";
  }
  return "?";
}

template <class S>
struct Classification {
  CochainClass kind = CochainClass::coboundary;
  // not_cocycle: (output index, input tuple) of the first nonzero entry of δc.
  std::vector<std::size_t> witness;
  // nontrivial: coordinates on the cohomology representatives.
  std::vector<S> class_coordinates;
  // coboundary: a degree n−1 cochain x with δx = c.
  std::optional<Cochain<S>> preimage;
};

template <class Field>
class HochschildComplex {
 public:
  using S = typename Field::value_type;

  // M = A; a missing action is the trivial group.
  static HochschildComplex regular(Algebra<Field> a, std::optional<ActionRep<Field>> act = std::nullopt,
                                   Limits limits = {}) {
    Bimodule<Field> m = Bimodule<Field>::regular(a);
    return HochschildComplex(std::move(a), std::move(m), std::move(act), limits);
  }

  HochschildComplex(Algebra<Field> a, Bimodule<Field> m, std::optional<ActionRep<Field>> act = std::nullopt,
                    Limits limits = {})
      : state_(std::make_shared<State>(std::move(a), std::move(m), std::move(act), limits)) {
    if (const auto r = validate_bimodule(algebra(), module()); !r.ok) throw AlgebraError("invalid bimodule: " + r.message);
    const auto& act_ref = action();
    if (act_ref.has_module_action()) {
      const ActionCandidate<Field> probe{act_ref.matrices(), act_ref.module_matrices()};
      if (const auto r = validate_action(algebra(), act_ref.group(), probe, &module()); !r.ok())
        throw GroupError("invalid action on the coefficient module: " + r.message);
    } else if (module().dim() != algebra().dim() && act_ref.group().order() > 1) {
      throw GroupError("a coefficient module other than A needs module matrices for the group action");
    }
  }

  const Algebra<Field>& algebra() const { return state_->algebra; }
  const Bimodule<Field>& module() const { return state_->module; }
  const ActionRep<Field>& action() const { return state_->action; }
  const Field& field() const { return algebra().field(); }
  const Limits& limits() const { return state_->limits; }

  std::size_t dim(std::size_t n) const {
    check_degree(n);
    return cochain_dim(algebra().dim(), module().dim(), n, limits());
  }

  Cochain<S> zero_cochain(std::size_t n) const { return Cochain<S>::zero(n, algebra().dim(), module().dim()); }

  SparseMatrix<S> coboundary_matrix(std::size_t n) const {
    if (n > limits().max_degree)
      throw SizeError("coboundary of degree " + std::to_string(n) + " exceeds the degree bound " +
                      std::to_string(limits().max_degree));
    const std::size_t cols = dim(n);
    const std::size_t rows = dim(n + 1);
    SparseMatrix<S> m(rows, cols);
    for (std::size_t j = 0; j < cols; ++j) m.set_column(j, state_->builder.column(n, j));
    return m;
  }

  Cochain<S> coboundary(const Cochain<S>& c) const {
    check_shape(c);
    dim(c.degree + 1);
    const auto sparse = SparseVector<S>::from_dense(c.coefficients);
    const auto out = state_->builder.apply(c.degree, sparse);
    Cochain<S> r = zero_cochain(c.degree + 1);
    for (const auto& e : out) r.coefficients[e.index] = e.value;
    return r;
  }

  const InvariantProjector<S>& projector(std::size_t n) const {
    return cached(state_->projectors, n, [&] {
      return invariant_projector(algebra(), action(), module().dim(), n, limits());
    });
  }

  // g·c = c for all g.
  bool is_invariant(const Cochain<S>& c) const {
    check_shape(c);
    if (action().group().order() == 1) return true;
    for (std::size_t g = 0; g < action().group().order(); ++g) {
      const auto t = cochain_action_matrix(algebra(), action(), g, c.degree);
      if (t.apply(std::span<const S>(c.coefficients)) != c.coefficients) return false;
    }
    return true;
  }

  Cochain<S> project(const Cochain<S>& c) const {
    check_shape(c);
    Cochain<S> r = c;
    r.coefficients = projector(c.degree).matrix.apply(std::span<const S>(c.coefficients));
    return r;
  }

  // Dimension of the degree-n level of the plain or invariant complex.
  std::size_t level_dim(std::size_t n, bool equivariant) const {
    return equivariant ? projector(n).basis.size() : dim(n);
  }

  // Coordinates of an invariant cochain on the invariant basis (identity in
  // the plain complex).
  SparseVector<S> coordinates(const Cochain<S>& c, bool equivariant) const {
    const auto v = SparseVector<S>::from_dense(c.coefficients);
    if (!equivariant) return v;
    const auto& p = projector(c.degree);
    std::vector<SparseEntry<S>> out;
    for (std::size_t j = 0; j < p.pivots.size(); ++j)
      if (const S* s = v.find(p.pivots[j])) out.push_back({j, *s});
    return SparseVector<S>::from_unsorted(std::move(out));
  }

  Cochain<S> from_coordinates(std::size_t n, const SparseVector<S>& coords, bool equivariant) const {
    Cochain<S> c = zero_cochain(n);
    if (!equivariant) {
      for (const auto& e : coords) c.coefficients.at(e.index) = e.value;
      return c;
    }
    const auto& p = projector(n);
    SparseVector<S> acc;
    for (const auto& e : coords) acc.axpy(e.value, p.basis.at(e.index));
    for (const auto& e : acc) c.coefficients[e.index] = e.value;
    return c;
  }

  // δ_n restricted to the chosen complex, in level coordinates.
  const SparseMatrix<S>& restricted_coboundary(std::size_t n, bool equivariant) const {
    auto& cache = equivariant ? state_->restricted_equivariant : state_->restricted_plain;
    return cached(cache, n, [&] {
      if (!equivariant) return coboundary_matrix(n);
      const auto& src = projector(n);
      const auto& dst = projector(n + 1);
      std::vector<std::int64_t> slot(dim(n + 1), -1);
      for (std::size_t j = 0; j < dst.pivots.size(); ++j) slot[dst.pivots[j]] = static_cast<std::int64_t>(j);
      SparseMatrix<S> r(dst.basis.size(), src.basis.size());
      for (std::size_t j = 0; j < src.basis.size(); ++j) {
        const auto image = state_->builder.apply(n, src.basis[j]);
        std::vector<SparseEntry<S>> col;
        for (const auto& e : image)
          if (slot[e.index] >= 0) col.push_back({static_cast<std::size_t>(slot[e.index]), e.value});
        r.set_column(j, SparseVector<S>::from_unsorted(std::move(col)));
      }
      return r;
    });
  }

  CohomologyReport<S> cohomology(std::size_t n, bool equivariant) const {
    if (n > limits().max_degree)
      throw SizeError("cohomology in degree " + std::to_string(n) + " exceeds the degree bound " +
                      std::to_string(limits().max_degree));
    const auto& data = cohomology_data(n, equivariant);
    CohomologyReport<S> report;
    report.degree = n;
    report.equivariant = equivariant;
    report.dim_cochains = level_dim(n, equivariant);
    report.dim_cocycles = data.dim_cocycles;
    report.dim_coboundaries = data.boundaries.rank();
    report.dim_H = data.representatives.rank();
    for (const auto& r : data.representatives.rows()) report.representatives.push_back(from_coordinates(n, r, equivariant));
    if (report.dim_H + report.dim_coboundaries != report.dim_cocycles)
      throw std::logic_error("cohomology: representative count disagrees with dim Z − dim B");
    return report;
  }

  Classification<S> classify(const Cochain<S>& c, bool equivariant) const {
    check_shape(c);
    if (equivariant && !is_invariant(c))
      throw InvarianceError("classify: cochain of degree " + std::to_string(c.degree) +
                            " is not invariant in an equivariant context");
    const std::size_t n = c.degree;
    Classification<S> out;
    const Cochain<S> dc = coboundary(c);
    for (std::size_t i = 0; i < dc.coefficients.size(); ++i)
      if (!is_zero(dc.coefficients[i])) {
        out.kind = CochainClass::not_cocycle;
        out.witness = decode_cochain_index(i, algebra().dim(), n + 1);
        return out;
      }
    const auto y = coordinates(c, equivariant);
    if (n == 0) {
      if (y.empty()) {
        out.kind = CochainClass::coboundary;
        return out;
      }
    } else if (auto x = solve(restricted_coboundary(n - 1, equivariant), y)) {
      out.kind = CochainClass::coboundary;
      out.preimage = from_coordinates(n - 1, *x, equivariant);
      return out;
    }
    const auto& data = cohomology_data(n, equivariant);
    const auto residue = data.boundaries.reduce(y);
    out.kind = CochainClass::nontrivial;
    SparseVector<S> rebuilt;
    for (std::size_t r = 0; r < data.representatives.rank(); ++r) {
      out.class_coordinates.push_back(residue.at(data.representatives.pivots()[r]));
      rebuilt.axpy(out.class_coordinates.back(), data.representatives.rows()[r]);
    }
    if (!(rebuilt == residue)) throw std::logic_error("classify: cocycle residue outside the representative span");
    return out;
  }

 private:
  struct CohomologyData {
    std::size_t dim_cocycles = 0;
    Echelon<S> boundaries{0};
    Echelon<S> representatives{0};
  };

  struct State {
    State(Algebra<Field> a, Bimodule<Field> m, std::optional<ActionRep<Field>> act, Limits lim)
        : algebra(std::move(a)),
          module(std::move(m)),
          action(act ? std::move(*act) : ActionRep<Field>::trivial(algebra)),
          limits(lim),
          builder(algebra, module) {}
    Algebra<Field> algebra;
    Bimodule<Field> module;
    ActionRep<Field> action;
    Limits limits;
    CoboundaryBuilder<Field> builder;
    std::mutex mutex;
    std::map<std::size_t, std::shared_ptr<const InvariantProjector<S>>> projectors;
    std::map<std::size_t, std::shared_ptr<const SparseMatrix<S>>> restricted_plain;
    std::map<std::size_t, std::shared_ptr<const SparseMatrix<S>>> restricted_equivariant;
    std::map<std::size_t, std::shared_ptr<const CohomologyData>> cohomology_plain;
    std::map<std::size_t, std::shared_ptr<const CohomologyData>> cohomology_equivariant;
  };

  template <class T, class Make>
  const T& cached(std::map<std::size_t, std::shared_ptr<const T>>& cache, std::size_t key, Make make) const {
    {
      std::lock_guard lock(state_->mutex);
      if (auto it = cache.find(key); it != cache.end()) return *it->second;
    }
    auto value = std::make_shared<const T>(make());
    std::lock_guard lock(state_->mutex);
    return *cache.emplace(key, std::move(value)).first->second;
  }

  const CohomologyData& cohomology_data(std::size_t n, bool equivariant) const {
    auto& cache = equivariant ? state_->cohomology_equivariant : state_->cohomology_plain;
    return cached(cache, n, [&] {
      const std::size_t width = level_dim(n, equivariant);
      const auto one = field().one();
      const auto& dn = restricted_coboundary(n, equivariant);
      CohomologyData data;
      const auto cocycles = row_space(dn).kernel_basis(one);
      data.dim_cocycles = cocycles.size();
      data.boundaries = n == 0 ? Echelon<S>(width) : column_space(restricted_coboundary(n - 1, equivariant));
      data.representatives = Echelon<S>(width);
      for (const auto& z : cocycles) data.representatives.insert(data.boundaries.reduce(z));
      data.representatives.finalize();
      return data;
    });
  }

  void check_degree(std::size_t n) const {
    if (n > limits().max_degree + 1)
      throw SizeError("degree " + std::to_string(n) + " exceeds the degree bound " + std::to_string(limits().max_degree));
  }

  void check_shape(const Cochain<S>& c) const {
    if (c.algebra_dim != algebra().dim() || c.module_dim != module().dim() ||
        c.coefficients.size() != dim(c.degree))
      throw DimensionError("cochain shape does not match the complex");
  }

  std::shared_ptr<State> state_;
};

}  // namespace hochkit

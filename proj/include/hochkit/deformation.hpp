#pragma once

// Truncated one-parameter deformations m_t = μ + m_1 t + … + m_N t^N of an
// algebra with a finite group action, their order-by-order extension through
// obstruction cochains, and equivalence of two such jets by a formal
// isomorphism Ψ = id + ψ_1 t + … + ψ_N t^N with invariant coefficients.
//
// Everything is computed inside the invariant subcomplex of the base
// HochschildComplex (M = A). Preimages are the reduced-echelon solutions with
// free variables set to zero, so every run is reproducible.

#include <hochkit/hochschild.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hochkit {

class DeformationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Values of a bilinear map on basis pairs: table[i*d+j] = f(e_i, e_j).
template <class S>
struct BilinearTable {
  std::size_t d = 0;
  std::vector<SparseVector<S>> values;

  const SparseVector<S>& operator()(std::size_t i, std::size_t j) const { return values[i * d + j]; }

  // f(u, v) for sparse u, v.
  SparseVector<S> eval(const SparseVector<S>& u, const SparseVector<S>& v) const {
    std::vector<SparseEntry<S>> acc;
    for (const auto& a : u)
      for (const auto& b : v) {
        const S ab = a.value * b.value;
        for (const auto& e : (*this)(a.index, b.index)) acc.push_back({e.index, ab * e.value});
      }
    return SparseVector<S>::from_unsorted(std::move(acc));
  }
};

template <class Field>
BilinearTable<typename Field::value_type> product_table(const Algebra<Field>& a) {
  BilinearTable<typename Field::value_type> t{a.dim(), {}};
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) t.values.push_back(a.product(i, j));
  return t;
}

template <class S>
BilinearTable<S> cochain_table(const Cochain<S>& c) {
  const std::size_t d = c.algebra_dim;
  BilinearTable<S> t{d, std::vector<SparseVector<S>>(d * d)};
  std::vector<std::vector<SparseEntry<S>>> raw(d * d);
  for (std::size_t flat = 0; flat < c.coefficients.size(); ++flat) {
    if (is_zero(c.coefficients[flat])) continue;
    raw[flat % (d * d)].push_back({flat / (d * d), c.coefficients[flat]});
  }
  for (std::size_t p = 0; p < d * d; ++p) t.values[p] = SparseVector<S>::from_unsorted(std::move(raw[p]));
  return t;
}

// Images of basis vectors under a degree-1 cochain: images[i] = ψ(e_i).
template <class S>
std::vector<SparseVector<S>> linear_images(const Cochain<S>& psi) {
  const std::size_t d = psi.algebra_dim;
  std::vector<std::vector<SparseEntry<S>>> raw(d);
  for (std::size_t flat = 0; flat < psi.coefficients.size(); ++flat)
    if (!is_zero(psi.coefficients[flat])) raw[flat % d].push_back({flat / d, psi.coefficients[flat]});
  std::vector<SparseVector<S>> out;
  for (auto& r : raw) out.push_back(SparseVector<S>::from_unsorted(std::move(r)));
  return out;
}

template <class S>
std::vector<SparseVector<S>> identity_images(std::size_t d, const S& one) {
  std::vector<SparseVector<S>> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(SparseVector<S>::unit(i, one));
  return out;
}

template <class S>
SparseVector<S> apply_linear(const std::vector<SparseVector<S>>& images, const SparseVector<S>& u) {
  SparseVector<S> out;
  for (const auto& e : u) out.axpy(e.value, images[e.index]);
  return out;
}

// Σ over (p, q) of f_p(f_q(a,b),c) − f_p(a, f_q(b,c)) on every basis triple.
template <class S>
Cochain<S> associator_sum(const std::vector<BilinearTable<S>>& tables,
                          const std::vector<std::pair<std::size_t, std::size_t>>& pairs, std::size_t d, const S& one) {
  Cochain<S> out = Cochain<S>::zero(3, d, d);
  const std::size_t d3 = d * d * d;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c) {
        SparseVector<S> acc;
        for (const auto& [p, q] : pairs) {
          const auto& fp = tables[p];
          const auto& fq = tables[q];
          acc.axpy(one, fp.eval(fq(a, b), SparseVector<S>::unit(c, one)));
          acc.axpy(-one, fp.eval(SparseVector<S>::unit(a, one), fq(b, c)));
        }
        for (const auto& e : acc) out.coefficients[e.index * d3 + (a * d + b) * d + c] = e.value;
      }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

template <class Field>
class DeformationJet {
 public:
  using S = typename Field::value_type;

  // coefficients[i] is m_{i+1}. verified_order is recomputed here, never
  // taken from the caller.
  DeformationJet(HochschildComplex<Field> base, std::vector<Cochain<S>> coefficients)
      : base_(std::move(base)), coefficients_(std::move(coefficients)) {
    const std::size_t d = base_.algebra().dim();
    if (base_.module().dim() != d) throw DeformationError("deformation base must have M = A");
    for (std::size_t i = 0; i < coefficients_.size(); ++i) {
      const auto& m = coefficients_[i];
      if (m.degree != 2 || m.algebra_dim != d || m.module_dim != d)
        throw DeformationError("jet coefficient m_" + std::to_string(i + 1) + " is not a 2-cochain on A");
      if (!base_.is_invariant(m))
        throw InvarianceError("jet coefficient m_" + std::to_string(i + 1) + " is not invariant");
    }
    verified_order_ = 0;
    while (verified_order_ < order() && residual(verified_order_ + 1).is_zero_cochain()) ++verified_order_;
  }

  static DeformationJet zero(HochschildComplex<Field> base, std::size_t order) {
    const std::size_t d = base.algebra().dim();
    return DeformationJet(std::move(base), std::vector<Cochain<S>>(order, Cochain<S>::zero(2, d, d)));
  }

  const HochschildComplex<Field>& base() const { return base_; }
  std::size_t order() const { return coefficients_.size(); }
  std::size_t verified_order() const { return verified_order_; }
  bool fully_verified() const { return verified_order_ == order(); }
  const std::vector<Cochain<S>>& coefficients() const { return coefficients_; }

  // m_i for 1 ≤ i ≤ order.
  const Cochain<S>& m(std::size_t i) const { return coefficients_.at(i - 1); }

  // Left side of the order-r associativity equation
  //   Σ_{p+q=r} m_p(m_q(a,b),c) − m_p(a,m_q(b,c))   (m_0 = μ)
  // on every basis triple.
  Cochain<S> residual(std::size_t r) const {
    if (r > order()) throw DeformationError("residual order " + std::to_string(r) + " exceeds jet order");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t p = 0; p <= r; ++p) pairs.emplace_back(p, r - p);
    return detail::associator_sum(tables(r), pairs, base_.algebra().dim(), base_.field().one());
  }

  std::vector<detail::BilinearTable<S>> tables(std::size_t up_to) const {
    std::vector<detail::BilinearTable<S>> t{detail::product_table(base_.algebra())};
    for (std::size_t i = 1; i <= up_to; ++i) t.push_back(detail::cochain_table(m(i)));
    return t;
  }

 private:
  HochschildComplex<Field> base_;
  std::vector<Cochain<S>> coefficients_;
  std::size_t verified_order_ = 0;
};

template <class S>
struct ObstructionClass {
  std::size_t degree = 3;  // 3 for extension, 2 for equivalence
  std::size_t order = 0;   // the order being reached
  Cochain<S> cochain;
  bool cocycle = true;     // δ(cochain) = 0 was verified
  Classification<S> classification;
  bool vanishes() const { return classification.kind == CochainClass::coboundary; }
};

// The cochain F(a,b,c) = Σ_{p+q=n+1, p,q>0} m_p(m_q(a,b),c) − m_p(a,m_q(b,c))
// for a jet verified to its full order n.
template <class Field>
Cochain<typename Field::value_type> obstruction_cochain(const DeformationJet<Field>& jet) {
  const std::size_t n = jet.order();
  if (n < 1 || !jet.fully_verified())
    throw DeformationError("obstruction requires a jet verified to its order n ≥ 1 (order " + std::to_string(n) +
                           ", verified " + std::to_string(jet.verified_order()) + ")");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t p = 1; p <= n; ++p) pairs.emplace_back(p, n + 1 - p);
  return detail::associator_sum(jet.tables(n), pairs, jet.base().algebra().dim(), jet.base().field().one());
}

// F together with its class in the invariant complex.
template <class Field>
ObstructionClass<typename Field::value_type> obstruction(const DeformationJet<Field>& jet) {
  ObstructionClass<typename Field::value_type> o;
  o.degree = 3;
  o.order = jet.order() + 1;
  o.cochain = obstruction_cochain(jet);
  o.classification = jet.base().classify(o.cochain, true);
  o.cocycle = o.classification.kind != CochainClass::not_cocycle;
  return o;
}

template <class Field>
struct ExtensionResult {
  std::optional<DeformationJet<Field>> jet;  // present when the obstruction vanishes
  ObstructionClass<typename Field::value_type> obstruction;
};

// m_{N+1} := the deterministic solution of δm_{N+1} = F in the invariant complex.
template <class Field>
ExtensionResult<Field> extend_once(const DeformationJet<Field>& jet) {
  ExtensionResult<Field> out{std::nullopt, obstruction(jet)};
  if (!out.obstruction.vanishes()) return out;
  auto coeffs = jet.coefficients();
  coeffs.push_back(*out.obstruction.classification.preimage);
  DeformationJet<Field> next(jet.base(), std::move(coeffs));
  if (!next.fully_verified()) throw std::logic_error("extend_once: extended jet fails its top associativity equation");
  out.jet = std::move(next);
  return out;
}

template <class Field>
struct LiftResult {
  DeformationJet<Field> jet;                  // the furthest jet reached
  std::optional<std::size_t> failed_order;    // first order that could not be reached
  std::vector<ObstructionClass<typename Field::value_type>> stages;
  bool ok() const { return !failed_order; }
};

// Lifts an invariant 2-cocycle m_1 order by order up to target_order.
template <class Field>
LiftResult<Field> lift(const HochschildComplex<Field>& base, const Cochain<typename Field::value_type>& m1,
                       std::size_t target_order) {
  if (target_order < 1) throw DeformationError("lift: target order must be at least 1");
  if (!base.is_invariant(m1)) throw InvarianceError("lift: infinitesimal is not invariant");
  if (!base.coboundary(m1).is_zero_cochain()) throw DeformationError("lift: infinitesimal is not a 2-cocycle");
  LiftResult<Field> out{DeformationJet<Field>(base, {m1}), std::nullopt, {}};
  while (out.jet.order() < target_order) {
    auto step = extend_once(out.jet);
    out.stages.push_back(step.obstruction);
    if (!step.jet) {
      out.failed_order = out.jet.order() + 1;
      break;
    }
    out.jet = std::move(*step.jet);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence

template <class Field>
struct FormalIsoJet {
  using S = typename Field::value_type;
  DeformationJet<Field> source;  // m_t
  DeformationJet<Field> target;  // n_t
  std::vector<Cochain<S>> psi;   // psi[i] is ψ_{i+1}
  std::size_t verified_order = 0;
  std::size_t order() const { return psi.size(); }
};

namespace detail {

template <class Field>
void check_same_base(const DeformationJet<Field>& m, const DeformationJet<Field>& n) {
  const auto& a = m.base().algebra();
  const auto& b = n.base().algebra();
  if (a.dim() != b.dim() || a.structure_constants().size() != b.structure_constants().size())
    throw DeformationError("jets are over different algebras");
  const auto ca = a.structure_constants();
  const auto cb = b.structure_constants();
  for (std::size_t i = 0; i < ca.size(); ++i)
    if (ca[i].i != cb[i].i || ca[i].j != cb[i].j || ca[i].k != cb[i].k || !(ca[i].value == cb[i].value))
      throw DeformationError("jets are over different algebras");
}

// Σ_{i+j+k=r, j≠skip, k≠skip} n_i(ψ_j a, ψ_k b) − Σ_{i+j=r, i≠skip} ψ_i(m_j(a,b)) on basis pairs.
// With skip > r every term is kept (the compatibility defect at order r).
template <class S>
Cochain<S> compatibility_sum(const std::vector<BilinearTable<S>>& m_tables, const std::vector<BilinearTable<S>>& n_tables,
                             const std::vector<std::vector<SparseVector<S>>>& psi_images, std::size_t r,
                             std::size_t skip, std::size_t d, const S& one) {
  Cochain<S> out = Cochain<S>::zero(2, d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      SparseVector<S> acc;
      for (std::size_t i = 0; i <= r; ++i)
        for (std::size_t j = 0; i + j <= r; ++j) {
          const std::size_t k = r - i - j;
          if (j == skip || k == skip) continue;
          acc.axpy(one, n_tables[i].eval(psi_images[j][a], psi_images[k][b]));
        }
      for (std::size_t i = 0; i <= r; ++i) {
        if (i == skip) continue;
        acc.axpy(-one, apply_linear(psi_images[i], m_tables[r - i](a, b)));
      }
      for (const auto& e : acc) out.coefficients[e.index * d * d + a * d + b] = e.value;
    }
  return out;
}

template <class Field>
std::vector<std::vector<SparseVector<typename Field::value_type>>> psi_image_list(
    const HochschildComplex<Field>& base, const std::vector<Cochain<typename Field::value_type>>& psi) {
  const std::size_t d = base.algebra().dim();
  std::vector<std::vector<SparseVector<typename Field::value_type>>> out{identity_images(d, base.field().one())};
  for (const auto& p : psi) out.push_back(linear_images(p));
  return out;
}

// (a,b) ↦ f(m(a,b)) − m(f a, b) − m(a, f b): first-order change of m under 1 + εf.
template <class S>
Cochain<S> derivation_action(const BilinearTable<S>& m, const std::vector<SparseVector<S>>& f, std::size_t d, const S& one) {
  Cochain<S> out = Cochain<S>::zero(2, d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      SparseVector<S> acc = apply_linear(f, m(a, b));
      acc.axpy(-one, m.eval(f[a], SparseVector<S>::unit(b, one)));
      acc.axpy(-one, m.eval(SparseVector<S>::unit(a, one), f[b]));
      for (const auto& e : acc) out.coefficients[e.index * d * d + a * d + b] = e.value;
    }
  return out;
}

template <class S>
DenseMatrix<S> linear_matrix(const Cochain<S>& psi) {
  const std::size_t d = psi.algebra_dim;
  DenseMatrix<S> m(d, d);
  for (std::size_t flat = 0; flat < psi.coefficients.size(); ++flat) m(flat / d, flat % d) = psi.coefficients[flat];
  return m;
}

template <class S>
Cochain<S> linear_cochain(const DenseMatrix<S>& m) {
  const std::size_t d = m.rows();
  Cochain<S> out = Cochain<S>::zero(1, d, d);
  for (std::size_t flat = 0; flat < out.coefficients.size(); ++flat) out.coefficients[flat] = m(flat / d, flat % d);
  return out;
}

// Truncated product of power series of linear maps, both with identity constant term.
template <class S>
std::vector<DenseMatrix<S>> series_product(const std::vector<DenseMatrix<S>>& a, const std::vector<DenseMatrix<S>>& b,
                                           std::size_t order) {
  std::vector<DenseMatrix<S>> out;
  for (std::size_t s = 0; s <= order; ++s) {
    DenseMatrix<S> acc(a[0].rows(), a[0].cols());
    for (std::size_t i = 0; i <= s; ++i)
      if (i < a.size() && s - i < b.size()) acc = acc + a[i] * b[s - i];
    out.push_back(std::move(acc));
  }
  return out;
}

// A prefix ψ_1…ψ_{r−1} is one isomorphism m → n mod t^r; every other one is
// Ψ∘α with α an automorphism of m mod t^r. Writing α = exp(D) with D a
// derivation of m mod t^r, the order-r obstruction moves by the order-r part
// of D·m, which is linear in D. Solves for D (and a 1-cochain absorbing the
// coboundary part) so that the obstruction class vanishes, and returns the
// prefix of Ψ∘exp(D). Empty when no such D exists, i.e. no isomorphism mod
// t^r extends, or when k! is not invertible for some k < r.
template <class Field>
std::optional<std::vector<Cochain<typename Field::value_type>>> gauge_corrected_prefix(
    const DeformationJet<Field>& m, const std::vector<Cochain<typename Field::value_type>>& prefix,
    const Cochain<typename Field::value_type>& obstruction) {
  using S = typename Field::value_type;
  const auto& base = m.base();
  const auto& field = base.field();
  const S one = field.one();
  const std::size_t r = prefix.size() + 1;
  const std::size_t d = base.algebra().dim();
  if (r < 2) return std::nullopt;
  S factorial = one;
  for (std::size_t k = 2; k < r; ++k) factorial = factorial * field.from_int(static_cast<long>(k));
  if (is_zero(factorial)) return std::nullopt;

  const std::size_t dim2 = base.dim(2);
  const auto& inv1 = base.projector(1).basis;
  const std::size_t q = inv1.size();
  const auto tables = m.tables(r - 1);
  // Unknowns: d_k (k = 1…r−1) then x, each in invariant degree-1 coordinates.
  // Rows: block s (1 ≤ s ≤ r) holds the order-s part of D·m, plus δx in block r.
  SparseMatrix<S> system(r * dim2, (r - 1) * q + q);
  auto as_cochain = [&](const SparseVector<S>& v) {
    Cochain<S> c = Cochain<S>::zero(1, d, d);
    c.coefficients = v.to_dense(d * d);
    return c;
  };
  std::vector<std::vector<SparseVector<S>>> images;
  for (const auto& b : inv1) images.push_back(linear_images(as_cochain(b)));
  for (std::size_t k = 1; k < r; ++k)
    for (std::size_t j = 0; j < q; ++j) {
      std::vector<SparseEntry<S>> col;
      for (std::size_t s = k; s <= r; ++s) {
        const auto part = derivation_action(tables[s - k], images[j], d, one);
        for (std::size_t i = 0; i < dim2; ++i)
          if (!is_zero(part.coefficients[i])) col.push_back({(s - 1) * dim2 + i, part.coefficients[i]});
      }
      system.set_column((k - 1) * q + j, SparseVector<S>::from_unsorted(std::move(col)));
    }
  for (std::size_t j = 0; j < q; ++j) {
    const auto dx = base.coboundary(as_cochain(inv1[j]));
    std::vector<SparseEntry<S>> col;
    for (std::size_t i = 0; i < dim2; ++i)
      if (!is_zero(dx.coefficients[i])) col.push_back({(r - 1) * dim2 + i, dx.coefficients[i]});
    system.set_column((r - 1) * q + j, SparseVector<S>::from_unsorted(std::move(col)));
  }
  std::vector<SparseEntry<S>> rhs;
  for (std::size_t i = 0; i < dim2; ++i)
    if (!is_zero(obstruction.coefficients[i])) rhs.push_back({(r - 1) * dim2 + i, -obstruction.coefficients[i]});
  const auto sol = solve(system, SparseVector<S>::from_unsorted(std::move(rhs)));
  if (!sol) return std::nullopt;

  // D as a series of d×d matrices, then α = Σ D^k / k! mod t^r.
  const auto dense = sol->to_dense((r - 1) * q + q);
  const DenseMatrix<S> id = DenseMatrix<S>::identity(d, one);
  std::vector<DenseMatrix<S>> D(r, DenseMatrix<S>(d, d));
  for (std::size_t k = 1; k < r; ++k) {
    SparseVector<S> acc;
    for (std::size_t j = 0; j < q; ++j) acc.axpy(dense[(k - 1) * q + j], inv1[j]);
    D[k] = linear_matrix(as_cochain(acc));
  }
  std::vector<DenseMatrix<S>> power(r, DenseMatrix<S>(d, d)), alpha(r, DenseMatrix<S>(d, d));
  power[0] = id;
  alpha[0] = id;
  S fact = one;
  for (std::size_t k = 1; k < r; ++k) {
    power = series_product(power, D, r - 1);
    fact = fact * field.from_int(static_cast<long>(k));
    const S inv = one / fact;
    for (std::size_t s = 0; s < r; ++s) {
      DenseMatrix<S> term = power[s];
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t c = 0; c < d; ++c) term(i, c) = term(i, c) * inv;
      alpha[s] = alpha[s] + term;
    }
  }
  std::vector<DenseMatrix<S>> psi{id};
  for (const auto& p : prefix) psi.push_back(linear_matrix(p));
  const auto composed = series_product(psi, alpha, r - 1);
  std::vector<Cochain<S>> out;
  for (std::size_t s = 1; s < r; ++s) out.push_back(linear_cochain(composed[s]));
  return out;
}

}  // namespace detail

// Defect of Σ_{i+j+k=r} n_i(ψ_j a, ψ_k b) = Σ_{i+j=r} ψ_i(m_j(a,b)) at order r
// (zero cochain when the equation holds). Needs psi of length ≥ r.
template <class Field>
Cochain<typename Field::value_type> compatibility_defect(const DeformationJet<Field>& m, const DeformationJet<Field>& n,
                                                         const std::vector<Cochain<typename Field::value_type>>& psi,
                                                         std::size_t r) {
  if (psi.size() < r || m.order() < r || n.order() < r)
    throw DeformationError("compatibility defect at order " + std::to_string(r) + " needs data to that order");
  const auto& base = m.base();
  const std::vector<Cochain<typename Field::value_type>> prefix(psi.begin(), psi.begin() + static_cast<std::ptrdiff_t>(r));
  return detail::compatibility_sum(m.tables(r), n.tables(r), detail::psi_image_list(base, prefix), r, r + 1,
                                   base.algebra().dim(), base.field().one());
}

// O_n(a,b) = Σ_{i+j=n, i≠n} ψ_i(m_j(a,b)) − Σ_{i+j+k=n, j,k≠n} n_i(ψ_j a, ψ_k b),
// given the prefix ψ_1 … ψ_{n−1}; classified in the invariant degree-2 complex.
template <class Field>
ObstructionClass<typename Field::value_type> equivalence_obstruction(
    const DeformationJet<Field>& m, const DeformationJet<Field>& n,
    const std::vector<Cochain<typename Field::value_type>>& prefix) {
  using S = typename Field::value_type;
  detail::check_same_base(m, n);
  const std::size_t level = prefix.size() + 1;
  const auto& base = m.base();
  const std::size_t d = base.algebra().dim();
  if (m.verified_order() < level || n.verified_order() < level)
    throw DeformationError("equivalence obstruction at order " + std::to_string(level) +
                           " needs both jets verified to that order");
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const auto& p = prefix[i];
    if (p.degree != 1 || p.algebra_dim != d || p.module_dim != d)
      throw DeformationError("ψ_" + std::to_string(i + 1) + " is not a 1-cochain on A");
    if (!base.is_invariant(p)) throw InvarianceError("ψ_" + std::to_string(i + 1) + " is not invariant");
  }
  for (std::size_t r = 1; r < level; ++r)
    if (!compatibility_defect(m, n, prefix, r).is_zero_cochain())
      throw DeformationError("isomorphism prefix fails the compatibility equation at order " + std::to_string(r));

  // The i = n term of the first sum and the j = n or k = n terms of the
  // second are exactly the ones that would involve ψ_n; the sign convention
  // below is  − (defect without those terms).
  Cochain<S> defect = detail::compatibility_sum(m.tables(level), n.tables(level), detail::psi_image_list(base, prefix),
                                                level, level, d, base.field().one());
  ObstructionClass<S> o;
  o.degree = 2;
  o.order = level;
  o.cochain = defect;
  for (auto& c : o.cochain.coefficients) c = -c;
  o.classification = base.classify(o.cochain, true);
  o.cocycle = o.classification.kind != CochainClass::not_cocycle;
  return o;
}

struct EquivalenceOptions {
  // On failure, also classify O_n in the full (non-invariant) complex.
  bool diagnose_unrestricted = false;
};

template <class Field>
struct EquivalenceResult {
  std::optional<FormalIsoJet<Field>> iso;
  std::optional<std::size_t> failed_order;
  std::vector<ObstructionClass<typename Field::value_type>> stages;
  // Set by the diagnostic: whether the failing O_n is a coboundary of some
  // (not necessarily invariant) 1-cochain.
  std::optional<bool> unrestricted_solvable;
  bool ok() const { return iso.has_value(); }
};

template <class Field>
EquivalenceResult<Field> find_equivalence(const DeformationJet<Field>& m, const DeformationJet<Field>& n,
                                          std::size_t target_order, EquivalenceOptions options = {}) {
  using S = typename Field::value_type;
  detail::check_same_base(m, n);
  if (m.verified_order() < target_order || n.verified_order() < target_order)
    throw DeformationError("find_equivalence: both jets must be verified to order " + std::to_string(target_order));
  EquivalenceResult<Field> out;
  std::vector<Cochain<S>> psi;
  for (std::size_t level = 1; level <= target_order; ++level) {
    auto o = equivalence_obstruction(m, n, psi);
    if (!o.vanishes() && o.cocycle) {
      // The prefix may be the wrong isomorphism mod t^level; try the others.
      if (auto fixed = detail::gauge_corrected_prefix(m, psi, o.cochain)) {
        auto retry = equivalence_obstruction(m, n, *fixed);
        if (!retry.vanishes()) throw std::logic_error("find_equivalence: corrected prefix still obstructed");
        psi = std::move(*fixed);
        o = std::move(retry);
      }
    }
    out.stages.push_back(o);
    if (!o.vanishes()) {
      out.failed_order = level;
      if (options.diagnose_unrestricted && o.cocycle)
        out.unrestricted_solvable = m.base().classify(o.cochain, false).kind == CochainClass::coboundary;
      return out;
    }
    psi.push_back(*o.classification.preimage);
    if (!compatibility_defect(m, n, psi, level).is_zero_cochain())
      throw std::logic_error("find_equivalence: solved ψ fails the compatibility equation");
  }
  out.iso = FormalIsoJet<Field>{m, n, std::move(psi), target_order};
  return out;
}

template <class Field>
EquivalenceResult<Field> is_trivial(const DeformationJet<Field>& jet, std::size_t target_order,
                                    EquivalenceOptions options = {}) {
  return find_equivalence(jet, DeformationJet<Field>::zero(jet.base(), jet.order()), target_order, options);
}

// The jet n_t(a,b) = Ψ(m_t(Ψ⁻¹a, Ψ⁻¹b)) mod t^{N+1}; Ψ is then an isomorphism
// from m_t to n_t.
template <class Field>
DeformationJet<Field> conjugate(const DeformationJet<Field>& jet, const std::vector<Cochain<typename Field::value_type>>& psi) {
  using S = typename Field::value_type;
  const auto& base = jet.base();
  const std::size_t d = base.algebra().dim();
  const std::size_t N = jet.order();
  const S one = base.field().one();
  auto images = detail::psi_image_list(base, psi);
  while (images.size() <= N) images.push_back(std::vector<SparseVector<S>>(d));
  // Ψ⁻¹ = Σ χ_k t^k: χ_0 = id, χ_r = −Σ_{i=1..r} ψ_i χ_{r−i}.
  std::vector<std::vector<SparseVector<S>>> inverse{detail::identity_images(d, one)};
  for (std::size_t r = 1; r <= N; ++r) {
    std::vector<SparseVector<S>> chi(d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t i = 1; i <= r; ++i) chi[a].axpy(-one, detail::apply_linear(images[i], inverse[r - i][a]));
    inverse.push_back(std::move(chi));
  }
  const auto tables = jet.tables(N);
  std::vector<Cochain<S>> coeffs;
  for (std::size_t r = 1; r <= N; ++r) {
    Cochain<S> nr = Cochain<S>::zero(2, d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        SparseVector<S> acc;
        for (std::size_t i = 0; i <= r; ++i)
          for (std::size_t j = 0; i + j <= r; ++j)
            for (std::size_t k = 0; i + j + k <= r; ++k) {
              const std::size_t l = r - i - j - k;
              const auto inner = tables[j].eval(inverse[k][a], inverse[l][b]);
              acc.axpy(one, detail::apply_linear(images[i], inner));
            }
        for (const auto& e : acc) nr.coefficients[e.index * d * d + a * d + b] = e.value;
      }
    coeffs.push_back(std::move(nr));
  }
  return DeformationJet<Field>(base, std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Fixed points

template <class Field>
struct RestrictedJet {
  FixedPointSubalgebra<Field> subalgebra;
  DeformationJet<Field> jet;  // over A^H, trivial group
};

// Each m_i restricted to A^H × A^H; invariance of m_i under H keeps the values
// in A^H.
template <class Field>
RestrictedJet<Field> restrict_to_fixed_points(const DeformationJet<Field>& jet, const Subgroup& h) {
  using S = typename Field::value_type;
  const auto& base = jet.base();
  auto sub = fixed_point_subalgebra(base.algebra(), base.action(), h);
  const std::size_t d = base.algebra().dim();
  const std::size_t k = sub.basis.size();
  std::vector<SparseVector<S>> basis;
  for (const auto& b : sub.basis) basis.push_back(SparseVector<S>::from_dense(b));
  std::vector<Cochain<S>> coeffs;
  for (std::size_t i = 1; i <= jet.order(); ++i) {
    const auto table = detail::cochain_table(jet.m(i));
    Cochain<S> restricted = Cochain<S>::zero(2, k, k);
    for (std::size_t p = 0; p < k; ++p)
      for (std::size_t q = 0; q < k; ++q) {
        const auto value = table.eval(basis[p], basis[q]).to_dense(d);
        const auto coords = fixed_coordinates(sub, value);
        if (!coords) throw std::logic_error("restrict_to_fixed_points: m_" + std::to_string(i) + " leaves A^H");
        for (std::size_t c = 0; c < k; ++c) restricted.coefficients[c * k * k + p * k + q] = (*coords)[c];
      }
    coeffs.push_back(std::move(restricted));
  }
  auto complex = HochschildComplex<Field>::regular(sub.algebra, std::nullopt, base.limits());
  DeformationJet<Field> restricted_jet(std::move(complex), std::move(coeffs));
  if (restricted_jet.verified_order() < jet.verified_order())
    throw std::logic_error("restrict_to_fixed_points: restricted jet lost associativity");
  return RestrictedJet<Field>{std::move(sub), std::move(restricted_jet)};
}

}  // namespace hochkit

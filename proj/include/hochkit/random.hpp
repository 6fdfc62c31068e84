#pragma once

// Seeded random cochains for property checks.

#include <hochkit/hochschild.hpp>

#include <random>

namespace hochkit {

// Entries are small integers; about one in `sparsity` is nonzero.
template <class Field>
Cochain<typename Field::value_type> random_cochain(const HochschildComplex<Field>& c, std::size_t n, std::mt19937_64& rng,
                                                   int bound = 3, unsigned sparsity = 2) {
  auto out = c.zero_cochain(n);
  std::uniform_int_distribution<int> value(-bound, bound);
  std::uniform_int_distribution<unsigned> keep(0, sparsity - 1);
  const auto& field = c.field();
  for (auto& x : out.coefficients)
    if (keep(rng) == 0) x = field.from_int(value(rng));
  return out;
}

template <class Field>
Cochain<typename Field::value_type> random_invariant_cochain(const HochschildComplex<Field>& c, std::size_t n,
                                                             std::mt19937_64& rng, int bound = 3, unsigned sparsity = 2) {
  return c.project(random_cochain(c, n, rng, bound, sparsity));
}

// Random invariant ψ_1..ψ_N (linear maps A → A).
template <class Field>
std::vector<Cochain<typename Field::value_type>> random_invariant_iso(const HochschildComplex<Field>& c, std::size_t order,
                                                                      std::mt19937_64& rng) {
  std::vector<Cochain<typename Field::value_type>> psi;
  for (std::size_t i = 0; i < order; ++i) psi.push_back(random_invariant_cochain(c, 1, rng));
  return psi;
}

}  // namespace hochkit

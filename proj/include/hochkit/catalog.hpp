#pragma once

// Built-in algebras with group actions and seed cochains, over Q.

#include <hochkit/hochschild.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hochkit {

template <class Field>
struct CatalogEntry {
  using S = typename Field::value_type;
  std::string name;
  std::string note;
  Algebra<Field> algebra;
  std::optional<ActionRep<Field>> action;
  std::map<std::string, Cochain<S>> seeds;

  HochschildComplex<Field> complex(Limits limits = {}) const {
    return HochschildComplex<Field>::regular(algebra, action, limits);
  }
};

class CatalogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

template <class Field>
void check_entry(const CatalogEntry<Field>& e) {
  const auto r = validate_algebra(e.algebra);
  if (!r.ok) throw std::logic_error("catalog entry " + e.name + " is not associative");
  // ActionRep validates on construction.
}

template <class Field>
DenseMatrix<typename Field::value_type> permutation_matrix(const Field& field, const std::vector<std::size_t>& image) {
  // column j has its 1 in row image[j]
  DenseMatrix<typename Field::value_type> m(image.size(), image.size());
  for (std::size_t j = 0; j < image.size(); ++j) m(image[j], j) = field.one();
  return m;
}

}  // namespace detail

// Q itself.
template <class Field = RationalField>
CatalogEntry<Field> make_ground_field(const Field& field = {}) {
  Algebra<Field> a(field, {"1"}, {{0, 0, 0, field.one()}});
  CatalogEntry<Field> e{"ground_field", "the one-dimensional algebra k", a, std::nullopt, {}};
  detail::check_entry(e);
  return e;
}

// k[x]/(x²), basis (1, x). With sign_action, Z₂ acts by x ↦ −x.
// Seed "m1": m₁(x, x) = 1.
template <class Field = RationalField>
CatalogEntry<Field> make_dual_numbers(bool sign_action = false, const Field& field = {}) {
  using S = typename Field::value_type;
  const S one = field.one();
  Algebra<Field> a(field, {"1", "x"}, {{0, 0, 0, one}, {0, 1, 1, one}, {1, 0, 1, one}});
  std::optional<ActionRep<Field>> act;
  if (sign_action) {
    DenseMatrix<S> flip = DenseMatrix<S>::identity(2, one);
    flip(1, 1) = -one;
    act.emplace(a, GroupTable::cyclic(2), ActionCandidate<Field>{{DenseMatrix<S>::identity(2, one), flip}, std::nullopt});
  }
  Cochain<S> m1 = Cochain<S>::zero(2, 2, 2);
  m1.coefficients[encode_cochain_index(0, std::vector<std::size_t>{1, 1}, 2)] = one;
  CatalogEntry<Field> e{sign_action ? "dual_numbers_z2" : "dual_numbers",
                        sign_action ? "k[x]/(x^2) with x -> -x" : "k[x]/(x^2)", std::move(a), std::move(act),
                        {{"m1", m1}}};
  detail::check_entry(e);
  return e;
}

// M_n(k), basis E_ij at index i*n+j, with S_n acting by conjugation
// P ↦ σPσ⁻¹ (E_ij ↦ E_σ(i)σ(j)).
template <class Field = RationalField>
CatalogEntry<Field> make_matrix_algebra(std::size_t n, const Field& field = {}) {
  using S = typename Field::value_type;
  if (n < 1 || n > 3) throw CatalogError("matrix algebra size must be between 1 and 3");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  std::vector<StructureConstant<S>> sc;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) sc.push_back({i * n + j, j * n + l, i * n + l, field.one()});
  Algebra<Field> a(field, labels, std::move(sc));

  const GroupTable sym = GroupTable::symmetric(n);
  std::vector<std::vector<std::size_t>> perms;
  {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }
  ActionCandidate<Field> act;
  for (const auto& sigma : perms) {
    std::vector<std::size_t> image(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) image[i * n + j] = sigma[i] * n + sigma[j];
    act.phi.push_back(detail::permutation_matrix(field, image));
  }
  CatalogEntry<Field> e{"matrix_" + std::to_string(n), "M_" + std::to_string(n) + "(k) with S_" + std::to_string(n) + " acting by conjugation",
                        a, ActionRep<Field>(a, sym, std::move(act)), {}};
  detail::check_entry(e);
  return e;
}

// A finite G-set X given by action[g * |X| + x] = g·x.
struct GSet {
  GroupTable group;
  std::size_t size;
  std::vector<std::size_t> action;
};

// Functions X → k with the pointwise product, basis of indicator functions
// δ_x, and G acting by (gα)(x) = α(g⁻¹x), i.e. g·δ_x = δ_{gx}.
template <class Field = RationalField>
CatalogEntry<Field> make_function_algebra(const GSet& gset, std::string name = "function_algebra", const Field& field = {}) {
  using S = typename Field::value_type;
  const std::size_t n = gset.size;
  if (n == 0 || n > 8) throw CatalogError("G-set size must be between 1 and 8");
  if (gset.action.size() != gset.group.order() * n) throw CatalogError("G-set action table has wrong size");
  for (std::size_t g = 0; g < gset.group.order(); ++g)
    for (std::size_t h = 0; h < gset.group.order(); ++h)
      for (std::size_t x = 0; x < n; ++x)
        if (gset.action[g * n + gset.action[h * n + x]] != gset.action[gset.group.multiply(g, h) * n + x])
          throw CatalogError("G-set action table is not an action");
  std::vector<std::string> labels;
  std::vector<StructureConstant<S>> sc;
  for (std::size_t x = 0; x < n; ++x) {
    labels.push_back("d" + std::to_string(x));
    sc.push_back({x, x, x, field.one()});
  }
  Algebra<Field> a(field, labels, std::move(sc));
  ActionCandidate<Field> act;
  for (std::size_t g = 0; g < gset.group.order(); ++g) {
    std::vector<std::size_t> image(gset.action.begin() + static_cast<std::ptrdiff_t>(g * n),
                                   gset.action.begin() + static_cast<std::ptrdiff_t>((g + 1) * n));
    act.phi.push_back(detail::permutation_matrix(field, image));
  }
  CatalogEntry<Field> e{std::move(name), "functions on a G-set, pointwise product, permutation action", a,
                        ActionRep<Field>(a, gset.group, std::move(act)), {}};
  detail::check_entry(e);
  return e;
}

// A group acting on itself by left multiplication.
inline GSet regular_gset(const GroupTable& g) {
  GSet s{g, g.order(), std::vector<std::size_t>(g.order() * g.order())};
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t x = 0; x < g.order(); ++x) s.action[a * g.order() + x] = g.multiply(a, x);
  return s;
}

// S_3 on {0,1,2}.
inline GSet permutation_gset(std::size_t k) {
  const GroupTable sym = GroupTable::symmetric(k);
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(k);
  for (std::size_t i = 0; i < k; ++i) p[i] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  GSet s{sym, k, std::vector<std::size_t>(perms.size() * k)};
  for (std::size_t g = 0; g < perms.size(); ++g)
    for (std::size_t x = 0; x < k; ++x) s.action[g * k + x] = perms[g][x];
  return s;
}

inline constexpr std::size_t kDefaultCuspTruncation = 4;

// k[x,y]/(y² − x³, x^m), basis x^a (index a) and y·x^a (index m + a),
// a = 0..m−1, with Z₂ acting by y ↦ −y.
// Seed "m1": m₁(y x^a, y x^b) = x^{a+b+2} (zero once a+b+2 ≥ m), else 0.
template <class Field = RationalField>
CatalogEntry<Field> make_truncated_cusp(std::size_t m = kDefaultCuspTruncation, const Field& field = {}) {
  using S = typename Field::value_type;
  if (m < 4) throw CatalogError("cusp truncation order must be at least 4 (so that y² = x³ survives)");
  const S one = field.one();
  const std::size_t d = 2 * m;
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) labels.push_back(a == 0 ? "1" : a == 1 ? "x" : "x^" + std::to_string(a));
  for (std::size_t a = 0; a < m; ++a) labels.push_back(a == 0 ? "y" : a == 1 ? "yx" : "yx^" + std::to_string(a));
  std::vector<StructureConstant<S>> sc;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      if (a + b < m) {
        sc.push_back({a, b, a + b, one});                  // x^a x^b
        sc.push_back({a, m + b, m + a + b, one});          // x^a · yx^b
        sc.push_back({m + a, b, m + a + b, one});          // yx^a · x^b
      }
      if (a + b + 3 < m) sc.push_back({m + a, m + b, a + b + 3, one});  // y² = x³
    }
  Algebra<Field> alg(field, labels, std::move(sc));
  DenseMatrix<S> flip = DenseMatrix<S>::identity(d, one);
  for (std::size_t a = 0; a < m; ++a) flip(m + a, m + a) = -one;
  ActionRep<Field> act(alg, GroupTable::cyclic(2), ActionCandidate<Field>{{DenseMatrix<S>::identity(d, one), flip}, std::nullopt});

  Cochain<S> m1 = Cochain<S>::zero(2, d, d);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      if (a + b + 2 < m) m1.coefficients[encode_cochain_index(a + b + 2, std::vector<std::size_t>{m + a, m + b}, d)] = one;

  CatalogEntry<Field> e{"cusp_m" + std::to_string(m),
                        "k[x,y]/(y^2 - x^3, x^" + std::to_string(m) + ") with Z2 acting by y -> -y", std::move(alg),
                        std::move(act), {{"m1", m1}}};
  detail::check_entry(e);
  return e;
}

inline std::vector<std::string> catalog_names() {
  return {"ground_field", "dual_numbers", "dual_numbers_z2", "matrix_1", "matrix_2", "matrix_3",
          "function_z2",  "function_z3",  "function_s3",     "cusp_m4",  "cusp_m5"};
}

template <class Field = RationalField>
CatalogEntry<Field> make_catalog_entry(const std::string& name, const Field& field = {}) {
  if (name == "ground_field") return make_ground_field(field);
  if (name == "dual_numbers") return make_dual_numbers(false, field);
  if (name == "dual_numbers_z2") return make_dual_numbers(true, field);
  if (name.rfind("matrix_", 0) == 0 && name.size() == 8) return make_matrix_algebra(static_cast<std::size_t>(name[7] - '0'), field);
  if (name == "function_z2") return make_function_algebra(regular_gset(GroupTable::cyclic(2)), name, field);
  if (name == "function_z3") return make_function_algebra(regular_gset(GroupTable::cyclic(3)), name, field);
  if (name == "function_s3") return make_function_algebra(permutation_gset(3), name, field);
  if (name.rfind("cusp_m", 0) == 0) {
    const auto digits = name.substr(6);
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 2)
      return make_truncated_cusp(static_cast<std::size_t>(std::stoul(digits)), field);
  }
  throw CatalogError("unknown catalog entry '" + name + "'");
}

}  // namespace hochkit

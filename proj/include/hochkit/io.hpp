#pragma once

// JSON documents for algebras, groups, actions, cochains, jets and reports.
//
//   algebra:  {"dimension", "basis_labels", "field": "Q" | "Fp:<p>",
//              "structure_constants": [[i, j, k, "num/den"], ...]}  (0-based)
//   group:    {"order", "table": [[...], ...] (row-major), "identity"}
//   action:   {"matrices": [d×d per element], "module_matrices": optional}
//   cochain:  {"convention", "degree", "algebra_dim", "module_dim",
//              "coefficients": {"<flat index>": "num/den", ...}}
//   bundle:   {"name", "algebra", "group"?, "action"?, "seeds"?: {name: cochain}}
//   jet:      {"base": bundle | {"catalog": name}, "order", "verified_order",
//              "coefficients": [cochain m_1, ..., m_N]}
//
// Scalars are exact fraction strings; plain JSON integers are also accepted.

#include <hochkit/catalog.hpp>
#include <hochkit/deformation.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hochkit {

using Json = nlohmann::ordered_json;

class DocumentError : public std::runtime_error {
 public:
  DocumentError(const std::string& where, const std::string& what)
      : std::runtime_error((where.empty() ? "/" : where) + ": " + what), where_(where.empty() ? "/" : where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DocumentError(path, std::string("malformed JSON (") + e.what() + ")");
  }
}

namespace io_detail {

inline const Json& member(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw DocumentError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw DocumentError(where, "missing field '" + key + "'");
  return *it;
}

inline std::size_t as_index(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw DocumentError(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

template <class Field>
typename Field::value_type as_scalar(const Field& field, const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return field.parse(j.get<std::string>());
    if (j.is_number_integer()) return field.parse(std::to_string(j.get<long long>()));
  } catch (const FieldError& e) {
    throw DocumentError(where, e.what());
  }
  throw DocumentError(where, "expected a fraction string");
}

template <class Field>
DenseMatrix<typename Field::value_type> as_matrix(const Field& field, const Json& j, std::size_t n,
                                                  const std::string& where) {
  if (!j.is_array() || j.size() != n) throw DocumentError(where, "expected " + std::to_string(n) + " rows");
  DenseMatrix<typename Field::value_type> m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string row_where = where + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != n) throw DocumentError(row_where, "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = as_scalar(field, j[r][c], row_where + "/" + std::to_string(c));
  }
  return m;
}

template <class Field>
Json matrix_json(const Field& field, const DenseMatrix<typename Field::value_type>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(field.format(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace io_detail

// Field named by a document, "Q" when absent.
inline FieldSpec document_field(const Json& doc) {
  const Json* alg = &doc;
  if (doc.is_object() && doc.contains("algebra")) alg = &doc["algebra"];
  if (doc.is_object() && doc.contains("base") && doc["base"].is_object() && doc["base"].contains("algebra"))
    alg = &doc["base"]["algebra"];
  if (alg->is_object() && alg->contains("field")) {
    const auto& f = (*alg)["field"];
    if (!f.is_string()) throw DocumentError("/field", "expected a string");
    try {
      return FieldSpec::parse(f.get<std::string>());
    } catch (const FieldError& e) {
      throw DocumentError("/field", e.what());
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Algebra

template <class Field>
Algebra<Field> algebra_from_json(const Field& field, const Json& j, const std::string& where = "") {
  using S = typename Field::value_type;
  const std::size_t d = io_detail::as_index(io_detail::member(j, "dimension", where), where + "/dimension");
  if (d == 0) throw DocumentError(where + "/dimension", "must be positive");
  std::vector<std::string> labels;
  if (j.contains("basis_labels")) {
    const auto& l = j["basis_labels"];
    if (!l.is_array() || l.size() != d) throw DocumentError(where + "/basis_labels", "expected " + std::to_string(d) + " labels");
    for (const auto& s : l) {
      if (!s.is_string()) throw DocumentError(where + "/basis_labels", "labels must be strings");
      labels.push_back(s.get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < d; ++i) labels.push_back("e" + std::to_string(i));
  }
  std::vector<StructureConstant<S>> sc;
  const auto& arr = io_detail::member(j, "structure_constants", where);
  if (!arr.is_array()) throw DocumentError(where + "/structure_constants", "expected an array");
  for (std::size_t t = 0; t < arr.size(); ++t) {
    const std::string w = where + "/structure_constants/" + std::to_string(t);
    const auto& e = arr[t];
    if (!e.is_array() || e.size() != 4) throw DocumentError(w, "expected [i, j, k, value]");
    StructureConstant<S> c{io_detail::as_index(e[0], w + "/0"), io_detail::as_index(e[1], w + "/1"),
                           io_detail::as_index(e[2], w + "/2"), io_detail::as_scalar(field, e[3], w + "/3")};
    if (c.i >= d || c.j >= d || c.k >= d) throw DocumentError(w, "index out of range for dimension " + std::to_string(d));
    sc.push_back(std::move(c));
  }
  return Algebra<Field>(field, std::move(labels), std::move(sc));
}

template <class Field>
Json to_json(const Algebra<Field>& a) {
  Json j;
  j["dimension"] = a.dim();
  j["basis_labels"] = a.labels();
  j["field"] = a.field().name();
  Json sc = Json::array();
  for (const auto& c : a.structure_constants()) sc.push_back(Json::array({c.i, c.j, c.k, a.field().format(c.value)}));
  j["structure_constants"] = std::move(sc);
  return j;
}

// ---------------------------------------------------------------------------
// Group and action

inline GroupCandidate group_from_json(const Json& j, const std::string& where = "") {
  GroupCandidate g;
  g.order = io_detail::as_index(io_detail::member(j, "order", where), where + "/order");
  g.identity = j.contains("identity") ? io_detail::as_index(j["identity"], where + "/identity") : 0;
  const auto& t = io_detail::member(j, "table", where);
  if (!t.is_array()) throw DocumentError(where + "/table", "expected an array");
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (t[r].is_array()) {
      for (std::size_t c = 0; c < t[r].size(); ++c)
        g.table.push_back(io_detail::as_index(t[r][c], where + "/table/" + std::to_string(r) + "/" + std::to_string(c)));
    } else {
      g.table.push_back(io_detail::as_index(t[r], where + "/table/" + std::to_string(r)));
    }
  }
  return g;
}

inline Json to_json(const GroupTable& g) {
  Json j;
  j["order"] = g.order();
  Json rows = Json::array();
  for (std::size_t a = 0; a < g.order(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < g.order(); ++b) row.push_back(g.multiply(a, b));
    rows.push_back(std::move(row));
  }
  j["table"] = std::move(rows);
  j["identity"] = g.identity();
  return j;
}

template <class Field>
ActionCandidate<Field> action_from_json(const Field& field, const Json& j, std::size_t d, std::size_t module_dim,
                                        const std::string& where = "") {
  ActionCandidate<Field> act;
  const auto& mats = io_detail::member(j, "matrices", where);
  if (!mats.is_array()) throw DocumentError(where + "/matrices", "expected an array");
  for (std::size_t g = 0; g < mats.size(); ++g)
    act.phi.push_back(io_detail::as_matrix(field, mats[g], d, where + "/matrices/" + std::to_string(g)));
  if (j.contains("module_matrices")) {
    std::vector<DenseMatrix<typename Field::value_type>> rho;
    const auto& mm = j["module_matrices"];
    if (!mm.is_array()) throw DocumentError(where + "/module_matrices", "expected an array");
    for (std::size_t g = 0; g < mm.size(); ++g)
      rho.push_back(io_detail::as_matrix(field, mm[g], module_dim, where + "/module_matrices/" + std::to_string(g)));
    act.rho = std::move(rho);
  }
  return act;
}

template <class Field>
Json to_json(const Field& field, const ActionRep<Field>& act) {
  Json j;
  Json mats = Json::array();
  for (const auto& m : act.matrices()) mats.push_back(io_detail::matrix_json(field, m));
  j["matrices"] = std::move(mats);
  if (act.module_matrices()) {
    Json mm = Json::array();
    for (const auto& m : *act.module_matrices()) mm.push_back(io_detail::matrix_json(field, m));
    j["module_matrices"] = std::move(mm);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Cochains

template <class Field>
Cochain<typename Field::value_type> cochain_from_json(const Field& field, const Json& j, const std::string& where = "") {
  using S = typename Field::value_type;
  if (j.contains("convention") && j["convention"] != kCochainConvention)
    throw DocumentError(where + "/convention", "unsupported cochain convention");
  Cochain<S> c;
  c.degree = io_detail::as_index(io_detail::member(j, "degree", where), where + "/degree");
  c.algebra_dim = io_detail::as_index(io_detail::member(j, "algebra_dim", where), where + "/algebra_dim");
  c.module_dim = j.contains("module_dim") ? io_detail::as_index(j["module_dim"], where + "/module_dim") : c.algebra_dim;
  std::size_t size = 0;
  try {
    size = cochain_dim(c.algebra_dim, c.module_dim, c.degree);
  } catch (const SizeError& e) {
    throw DocumentError(where, e.what());
  }
  c.coefficients.assign(size, S{});
  const auto& coeffs = io_detail::member(j, "coefficients", where);
  if (!coeffs.is_object()) throw DocumentError(where + "/coefficients", "expected an object {index: value}");
  for (const auto& [key, value] : coeffs.items()) {
    const std::string w = where + "/coefficients/" + key;
    std::size_t idx = 0;
    try {
      std::size_t pos = 0;
      idx = std::stoul(key, &pos);
      if (pos != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw DocumentError(w, "coefficient key must be a flat index");
    }
    if (idx >= size) throw DocumentError(w, "flat index out of range (size " + std::to_string(size) + ")");
    c.coefficients[idx] = io_detail::as_scalar(field, value, w);
  }
  return c;
}

template <class Field>
Json to_json(const Field& field, const Cochain<typename Field::value_type>& c) {
  Json j;
  j["convention"] = kCochainConvention;
  j["degree"] = c.degree;
  j["algebra_dim"] = c.algebra_dim;
  j["module_dim"] = c.module_dim;
  Json coeffs = Json::object();
  for (std::size_t i = 0; i < c.coefficients.size(); ++i)
    if (!is_zero(c.coefficients[i])) coeffs[std::to_string(i)] = field.format(c.coefficients[i]);
  j["coefficients"] = std::move(coeffs);
  return j;
}

// ---------------------------------------------------------------------------
// Bundles: an algebra with optional action and seed cochains

template <class Field>
struct Bundle {
  std::string name;
  Algebra<Field> algebra;
  std::optional<ActionRep<Field>> action;
  std::map<std::string, Cochain<typename Field::value_type>> seeds;

  HochschildComplex<Field> complex(Limits limits = {}) const {
    return HochschildComplex<Field>::regular(algebra, action, limits);
  }
};

template <class Field>
Bundle<Field> bundle_from_entry(const CatalogEntry<Field>& e) {
  return Bundle<Field>{e.name, e.algebra, e.action, e.seeds};
}

// Accepts a bundle, a bare algebra document, or {"catalog": name}.
template <class Field>
Bundle<Field> bundle_from_json(const Field& field, const Json& j, const std::string& where = "") {
  if (!j.is_object()) throw DocumentError(where.empty() ? "/" : where, "expected an object");
  if (j.contains("catalog")) {
    if (!j["catalog"].is_string()) throw DocumentError(where + "/catalog", "expected a catalog name");
    try {
      return bundle_from_entry(make_catalog_entry(j["catalog"].get<std::string>(), field));
    } catch (const CatalogError& e) {
      throw DocumentError(where + "/catalog", e.what());
    }
  }
  const bool nested = j.contains("algebra");
  const Json& alg_json = nested ? j["algebra"] : j;
  const std::string alg_where = nested ? where + "/algebra" : where;
  Algebra<Field> algebra = algebra_from_json(field, alg_json, alg_where);
  if (const auto r = validate_algebra(algebra); !r.ok)
    throw DocumentError(alg_where, "structure constants are not associative at (" + std::to_string(r.i) + "," +
                                       std::to_string(r.j) + "," + std::to_string(r.l) + ")");
  Bundle<Field> b{j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "algebra", algebra,
                  std::nullopt, {}};
  if (nested && j.contains("action")) {
    const auto g = GroupTable([&] {
      auto cand = group_from_json(io_detail::member(j, "group", where), where + "/group");
      if (const auto r = validate_group(cand); !r.ok()) throw DocumentError(where + "/group", r.message);
      return cand;
    }());
    auto act = action_from_json(field, j["action"], algebra.dim(), algebra.dim(), where + "/action");
    if (act.rho) throw DocumentError(where + "/action/module_matrices", "deformation bundles use M = A");
    if (const auto r = validate_action(algebra, g, act); !r.ok())
      throw DocumentError(where + "/action", r.message);
    b.action.emplace(algebra, g, std::move(act));
  }
  if (nested && j.contains("seeds")) {
    for (const auto& [name, cj] : j["seeds"].items())
      b.seeds.emplace(name, cochain_from_json(field, cj, where + "/seeds/" + name));
  }
  return b;
}

template <class Field>
Json to_json(const Bundle<Field>& b) {
  Json j;
  j["name"] = b.name;
  j["algebra"] = to_json(b.algebra);
  if (b.action) {
    j["group"] = to_json(b.action->group());
    j["action"] = to_json(b.algebra.field(), *b.action);
  }
  if (!b.seeds.empty()) {
    Json s = Json::object();
    for (const auto& [name, c] : b.seeds) s[name] = to_json(b.algebra.field(), c);
    j["seeds"] = std::move(s);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Jets

// Base bundle and coefficients; the caller rebuilds the jet (which recomputes
// the verified order).
template <class Field>
std::pair<Bundle<Field>, std::vector<Cochain<typename Field::value_type>>> jet_from_json(const Field& field, const Json& j,
                                                                                        const std::string& where = "") {
  Bundle<Field> base = bundle_from_json(field, io_detail::member(j, "base", where), where + "/base");
  const auto& coeffs = io_detail::member(j, "coefficients", where);
  if (!coeffs.is_array()) throw DocumentError(where + "/coefficients", "expected an array");
  std::vector<Cochain<typename Field::value_type>> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    auto c = cochain_from_json(field, coeffs[i], where + "/coefficients/" + std::to_string(i));
    if (c.degree != 2 || c.algebra_dim != base.algebra.dim() || c.module_dim != base.algebra.dim())
      throw DocumentError(where + "/coefficients/" + std::to_string(i), "expected a 2-cochain on the base algebra");
    out.push_back(std::move(c));
  }
  if (j.contains("order") && io_detail::as_index(j["order"], where + "/order") != out.size())
    throw DocumentError(where + "/order", "does not match the number of coefficients");
  return {std::move(base), std::move(out)};
}

template <class Field>
Json jet_to_json(const Bundle<Field>& base, const DeformationJet<Field>& jet) {
  Json j;
  j["base"] = to_json(base);
  j["order"] = jet.order();
  j["verified_order"] = jet.verified_order();
  Json coeffs = Json::array();
  for (const auto& c : jet.coefficients()) coeffs.push_back(to_json(base.algebra.field(), c));
  j["coefficients"] = std::move(coeffs);
  return j;
}

// ---------------------------------------------------------------------------
// Reports

template <class Field>
Json to_json(const Field& field, const CohomologyReport<typename Field::value_type>& r) {
  Json j;
  j["degree"] = r.degree;
  j["equivariant"] = r.equivariant;
  j["field"] = field.name();
  j["dim_cochains"] = r.dim_cochains;
  j["dim_cocycles"] = r.dim_cocycles;
  j["dim_coboundaries"] = r.dim_coboundaries;
  j["dim_H"] = r.dim_H;
  Json reps = Json::array();
  for (const auto& c : r.representatives) reps.push_back(to_json(field, c));
  j["representatives"] = std::move(reps);
  return j;
}

template <class Field>
Json to_json(const Field& field, const Classification<typename Field::value_type>& c) {
  Json j;
  j["kind"] = to_string(c.kind);
  if (c.kind == CochainClass::not_cocycle) j["witness"] = c.witness;
  if (c.kind == CochainClass::nontrivial) {
    Json coords = Json::array();
    for (const auto& s : c.class_coordinates) coords.push_back(field.format(s));
    j["class_coordinates"] = std::move(coords);
  }
  if (c.preimage) j["preimage"] = to_json(field, *c.preimage);
  return j;
}

template <class Field>
Json to_json(const Field& field, const ObstructionClass<typename Field::value_type>& o) {
  Json j;
  j["degree"] = o.degree;
  j["order"] = o.order;
  j["cocycle"] = o.cocycle;
  j["cochain"] = to_json(field, o.cochain);
  j["classification"] = to_json(field, o.classification);
  return j;
}

}  // namespace hochkit

// hochkit: command-line front end.
//
// Exit status: 0 success, 1 negative mathematical result, 2 input or usage error.

#include <hochkit/io.hpp>
#include <hochkit/random.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace hochkit;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;

struct Config {
  std::string field;  // empty: take it from the document
  std::string format = "text";
  std::size_t max_coeffs = Limits{}.max_coeffs;
  std::size_t max_degree = Limits{}.max_degree;

  std::vector<std::string> inputs;
  std::string out;
  std::size_t degree = 1;
  std::size_t order = 0;
  bool equivariant = false;
  std::string infinitesimal;
  std::string classify;
  std::string subgroup;
  bool diagnose = false;
  std::uint64_t seed = 1;
  std::size_t samples = 20;
  std::string catalog_action;
  std::string catalog_name;

  Limits limits() const { return {max_degree, max_coeffs}; }
};

struct Outcome {
  int status = kOk;
  Json report;
  std::vector<std::string> lines;
};

// Thrown for well-formed input that fails a mathematical check.
struct Negative {
  std::string message;
  Json witness;
};

std::string join(const std::vector<std::size_t>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

template <class Field>
std::string vector_text(const Field& field, const std::vector<std::string>& labels, const std::vector<typename Field::value_type>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (is_zero(v[k])) continue;
    const auto coeff = field.format(v[k]);
    if (!s.empty()) s += coeff[0] == '-' ? " - " : " + ";
    else if (coeff[0] == '-') s += "-";
    const auto mag = coeff[0] == '-' ? coeff.substr(1) : coeff;
    s += (mag == "1" ? "" : mag + "*") + labels[k];
  }
  return s.empty() ? "0" : s;
}

// One line per input tuple with a nonzero value.
template <class Field>
std::vector<std::string> cochain_text(const Field& field, const std::vector<std::string>& labels,
                                      const Cochain<typename Field::value_type>& c, const std::string& name) {
  using S = typename Field::value_type;
  std::vector<std::string> out;
  const std::size_t cols = int_pow(c.algebra_dim, c.degree);
  std::vector<std::string> module_labels = labels;
  if (c.module_dim != labels.size()) {
    module_labels.clear();
    for (std::size_t k = 0; k < c.module_dim; ++k) module_labels.push_back("v" + std::to_string(k));
  }
  for (std::size_t j = 0; j < cols; ++j) {
    std::vector<S> value(c.module_dim);
    bool any = false;
    for (std::size_t k = 0; k < c.module_dim; ++k) {
      value[k] = c.coefficients[k * cols + j];
      any = any || !is_zero(value[k]);
    }
    if (!any) continue;
    const auto idx = decode_cochain_index(j, c.algebra_dim, c.degree);
    std::string args;
    for (std::size_t t = 1; t < idx.size(); ++t) args += (t > 1 ? "," : "") + labels[idx[t]];
    out.push_back("  " + name + "(" + args + ") = " + vector_text(field, module_labels, value));
  }
  if (out.empty()) out.push_back("  " + name + " = 0");
  return out;
}

template <class Field>
class Runner {
 public:
  using S = typename Field::value_type;

  Runner(Field field, const Config& cfg) : field_(std::move(field)), cfg_(cfg) {}

  Outcome validate(const Json& input) {
    const Json doc = input.is_object() && input.contains("catalog") ? to_json(bundle_from_json(field_, input)) : input;
    Outcome o;
    o.report["command"] = "validate";
    if (doc.is_object() && doc.contains("table") && !doc.contains("algebra")) {
      check_group(group_from_json(doc), "/", o);
      return finish(o);
    }
    const bool nested = doc.contains("algebra");
    const Json& alg_json = nested ? doc["algebra"] : doc;
    const auto a = algebra_from_json(field_, alg_json, nested ? "/algebra" : "");
    o.report["dimension"] = a.dim();
    const auto r = validate_algebra(a);
    if (!r.ok) {
      o.status = kNegative;
      o.report["valid"] = false;
      o.report["failure"] = "associativity";
      o.report["witness"] = {{"triple", {r.i, r.j, r.l}},
                             {"left", scalars(r.left)},
                             {"right", scalars(r.right)}};
      o.lines.push_back("algebra: NOT associative at (" + join({r.i, r.j, r.l}) + ")");
      o.lines.push_back("  (e" + std::to_string(r.i) + " e" + std::to_string(r.j) + ") e" + std::to_string(r.l) + " = " +
                        vector_text(field_, a.labels(), r.left));
      o.lines.push_back("  e" + std::to_string(r.i) + " (e" + std::to_string(r.j) + " e" + std::to_string(r.l) + ") = " +
                        vector_text(field_, a.labels(), r.right));
      return finish(o);
    }
    o.lines.push_back("algebra: ok (dim " + std::to_string(a.dim()) + ", field " + field_.name() + ")");
    if (!nested || !doc.contains("group")) return finish(o);
    const auto cand = group_from_json(doc["group"], "/group");
    if (!check_group(cand, "/group", o)) return finish(o);
    const GroupTable g(cand);
    if (!doc.contains("action")) return finish(o);
    const auto act = action_from_json(field_, doc["action"], a.dim(), a.dim(), "/action");
    const auto ar = validate_action(a, g, act);
    if (!ar.ok()) {
      o.status = kNegative;
      o.report["valid"] = false;
      o.report["failure"] = "action";
      o.report["witness"] = {{"condition", ar.condition}, {"indices", ar.witness}, {"message", ar.message}};
      o.lines.push_back("action: INVALID (condition " + std::to_string(ar.condition) + ", at " + join(ar.witness) +
                        "): " + ar.message);
      return finish(o);
    }
    o.lines.push_back("action: ok (|G| = " + std::to_string(g.order()) + ")");
    return finish(o);
  }

  Outcome hh(const Json& doc) {
    Outcome o;
    const auto b = bundle_from_json(field_, doc);
    const auto c = b.complex(cfg_.limits());
    const auto r = c.cohomology(cfg_.degree, cfg_.equivariant);
    o.report["command"] = "hh";
    o.report["algebra"] = b.name;
    o.report["cohomology"] = to_json(field_, r);
    const std::string n = std::to_string(r.degree);
    const std::string sub = cfg_.equivariant ? "_G" : "";
    o.lines.push_back(b.name + " over " + field_.name() + (cfg_.equivariant ? ", invariant complex" : ""));
    o.lines.push_back("dim C^" + n + sub + " = " + std::to_string(r.dim_cochains));
    o.lines.push_back("dim Z^" + n + sub + " = " + std::to_string(r.dim_cocycles));
    o.lines.push_back("dim B^" + n + sub + " = " + std::to_string(r.dim_coboundaries));
    o.lines.push_back("dim H^" + n + sub + " = " + std::to_string(r.dim_H));
    for (std::size_t i = 0; i < r.representatives.size(); ++i)
      append(o.lines, cochain_text(field_, b.algebra.labels(), r.representatives[i], "c" + std::to_string(i + 1)));
    if (!cfg_.classify.empty()) {
      const auto x = cochain_from_json(field_, read_json_file(cfg_.classify), cfg_.classify);
      if (x.degree != cfg_.degree) throw DocumentError(cfg_.classify, "cochain degree does not match --degree");
      const auto cl = c.classify(x, cfg_.equivariant);
      o.report["classification"] = to_json(field_, cl);
      o.lines.push_back("class: " + std::string(to_string(cl.kind)));
      if (cl.kind == CochainClass::not_cocycle) o.lines.push_back("  delta is nonzero at " + join(cl.witness));
      if (cl.kind == CochainClass::nontrivial) o.lines.push_back("  coordinates: " + join_scalars(cl.class_coordinates));
      if (cl.kind != CochainClass::coboundary) o.status = kNegative;
    }
    return finish(o);
  }

  Outcome lift_cmd(const Json& doc) {
    Outcome o;
    const auto b = bundle_from_json(field_, doc);
    const auto c = b.complex(cfg_.limits());
    Cochain<S> m1;
    if (!cfg_.infinitesimal.empty()) {
      m1 = cochain_from_json(field_, read_json_file(cfg_.infinitesimal), cfg_.infinitesimal);
    } else if (b.seeds.count("m1")) {
      m1 = b.seeds.at("m1");
    } else {
      throw DocumentError("/seeds", "no --infinitesimal given and the bundle has no seed 'm1'");
    }
    if (m1.degree != 2 || m1.algebra_dim != b.algebra.dim() || m1.module_dim != b.algebra.dim())
      throw DocumentError(cfg_.infinitesimal.empty() ? "/seeds/m1" : cfg_.infinitesimal, "expected a 2-cochain on the algebra");
    o.report["command"] = "lift";
    o.report["algebra"] = b.name;
    if (!c.is_invariant(m1)) throw Negative{"infinitesimal is not invariant", {{"invariant", false}}};
    if (const auto cl = c.classify(m1, true); cl.kind == CochainClass::not_cocycle)
      throw Negative{"infinitesimal is not a 2-cocycle", {{"delta_nonzero_at", cl.witness}}};
    const std::size_t target = cfg_.order ? cfg_.order : 1;
    const auto res = lift(c, m1, target);
    Json stages = Json::array();
    for (const auto& s : res.stages) stages.push_back(to_json(field_, s));
    o.report["stages"] = std::move(stages);
    o.report["reached_order"] = res.jet.order();
    o.lines.push_back("lifting " + b.name + " to order " + std::to_string(target));
    for (const auto& s : res.stages)
      o.lines.push_back("  order " + std::to_string(s.order) + ": obstruction " +
                        (s.vanishes() ? "vanishes" : "class " + join_scalars(s.classification.class_coordinates)));
    const Json jet = jet_to_json(b, res.jet);
    if (res.failed_order) {
      o.status = kNegative;
      o.report["failed_order"] = *res.failed_order;
      o.report["witness"] = res.stages.back().classification.class_coordinates.empty()
                                ? Json(res.stages.back().classification.witness)
                                : Json(scalars(res.stages.back().classification.class_coordinates));
      o.lines.push_back("obstructed at order " + std::to_string(*res.failed_order));
    } else {
      for (std::size_t i = 2; i <= res.jet.order(); ++i)
        append(o.lines, cochain_text(field_, b.algebra.labels(), res.jet.m(i), "m" + std::to_string(i)));
      o.lines.push_back("jet verified to order " + std::to_string(res.jet.verified_order()));
    }
    emit_document(o, "jet", jet);
    return finish(o);
  }

  Outcome equiv(const Json& a_doc, const Json& b_doc) {
    Outcome o;
    o.report["command"] = "equiv";
    const auto [ba, ma] = load_jet(a_doc, "first jet");
    const auto [bb, mb] = load_jet(b_doc, "second jet");
    if (to_json(ba) != to_json(bb)) throw Negative{"jets have different base algebras", {{"same_base", false}}};
    const std::size_t target = cfg_.order ? cfg_.order : std::min(ma.order(), mb.order());
    if (target > ma.order() || target > mb.order())
      throw DocumentError("--order", "exceeds the order of the given jets");
    auto res = find_equivalence(ma, mb, target, EquivalenceOptions{cfg_.diagnose});
    report_equivalence(o, ba, res, "isomorphism");
    return finish(o);
  }

  Outcome rigid(const Json& doc) {
    Outcome o;
    o.report["command"] = "rigid";
    const auto [b, m] = load_jet(doc, "jet");
    const std::size_t target = cfg_.order ? cfg_.order : m.order();
    if (target > m.order()) throw DocumentError("--order", "exceeds the order of the jet");
    auto res = is_trivial(m, target, EquivalenceOptions{cfg_.diagnose});
    report_equivalence(o, b, res, "trivialization");
    o.report["trivial"] = res.ok();
    o.lines.push_back(res.ok() ? "trivial to order " + std::to_string(target) : "nontrivial");
    return finish(o);
  }

  Outcome fixed(const Json& doc) {
    Outcome o;
    o.report["command"] = "fixed";
    const auto [b, m] = load_jet(doc, "jet");
    const auto& g = m.base().action().group();
    Subgroup h = whole_group(g);
    if (!cfg_.subgroup.empty()) {
      std::vector<std::size_t> elems;
      std::stringstream ss(cfg_.subgroup);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
          v = std::stoul(tok, &pos);
        } catch (const std::exception&) {
          pos = 0;
        }
        if (pos == 0 || pos != tok.size()) throw DocumentError("--subgroup", "expected comma-separated element indices");
        elems.push_back(v);
      }
      std::sort(elems.begin(), elems.end());
      elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
      h = Subgroup{elems};
      for (auto e : elems)
        if (e >= g.order()) throw DocumentError("--subgroup", "element " + std::to_string(e) + " out of range");
      if (!is_subgroup(g, h)) throw Negative{"not a subgroup", {{"elements", elems}}};
    }
    const auto r = restrict_to_fixed_points(m, h);
    const std::size_t k = r.subalgebra.basis.size();
    o.report["subgroup"] = h.elements;
    o.report["fixed_dimension"] = k;
    o.report["verified_order"] = r.jet.verified_order();
    Bundle<Field> sub{b.name + "_fixed", r.subalgebra.algebra, std::nullopt, {}};
    o.lines.push_back("A^H for H = {" + join(h.elements) + "}: dim " + std::to_string(k));
    o.lines.push_back("restricted jet verified to order " + std::to_string(r.jet.verified_order()) + " of " +
                      std::to_string(r.jet.order()));
    if (!r.jet.fully_verified()) {
      o.status = kNegative;
      o.report["witness"] = {{"failed_order", r.jet.verified_order() + 1}};
    }
    emit_document(o, "jet", jet_to_json(sub, r.jet));
    return finish(o);
  }

  Outcome check(const Json& doc) {
    Outcome o;
    o.report["command"] = "check";
    const auto b = bundle_from_json(field_, doc);
    const auto c = b.complex(cfg_.limits());
    std::mt19937_64 rng(cfg_.seed);
    const std::size_t n = cfg_.degree;
    std::size_t passed = 0;
    for (std::size_t s = 0; s < cfg_.samples; ++s) {
      const auto x = random_invariant_cochain(c, n, rng);
      const auto dx = c.coboundary(x);
      if (!c.is_invariant(dx)) throw Negative{"coboundary of an invariant cochain is not invariant", {{"sample", s}}};
      if (n + 1 <= cfg_.max_degree && !c.coboundary(dx).is_zero_cochain())
        throw Negative{"delta squared is nonzero", {{"sample", s}}};
      ++passed;
    }
    o.report["seed"] = cfg_.seed;
    o.report["degree"] = n;
    o.report["samples"] = passed;
    o.lines.push_back(std::to_string(passed) + " random invariant " + std::to_string(n) +
                      "-cochains: delta preserves invariance and delta^2 = 0 (seed " + std::to_string(cfg_.seed) + ")");
    return finish(o);
  }

  Outcome catalog() {
    Outcome o;
    o.report["command"] = "catalog";
    if (cfg_.catalog_action == "list") {
      Json entries = Json::array();
      for (const auto& name : catalog_names()) {
        const auto e = make_catalog_entry(name, field_);
        const std::size_t order = e.action ? e.action->group().order() : 1;
        entries.push_back({{"name", name}, {"dimension", e.algebra.dim()}, {"group_order", order}, {"note", e.note}});
        o.lines.push_back(name + "  dim " + std::to_string(e.algebra.dim()) + "  |G| " + std::to_string(order) + "  " + e.note);
      }
      o.report["entries"] = std::move(entries);
      return finish(o);
    }
    const auto e = make_catalog_entry(cfg_.catalog_name, field_);
    const Json bundle = to_json(bundle_from_entry(e));
    if (cfg_.out.empty()) {
      o.report = bundle;
      o.lines.push_back(bundle.dump(2));
    } else {
      emit_document(o, "bundle", bundle);
    }
    return finish(o);
  }

 private:
  Field field_;
  const Config& cfg_;

  static void append(std::vector<std::string>& out, const std::vector<std::string>& more) {
    out.insert(out.end(), more.begin(), more.end());
  }

  Json scalars(const std::vector<S>& v) const {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(field_.format(x));
    return j;
  }

  std::string join_scalars(const std::vector<S>& v) const {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + field_.format(v[i]);
    return s + ")";
  }

  bool check_group(const GroupCandidate& cand, const std::string& where, Outcome& o) {
    const auto r = validate_group(cand);
    if (r.ok()) {
      o.lines.push_back("group: ok (order " + std::to_string(cand.order) + ")");
      return true;
    }
    static const char* names[] = {"none", "shape", "identity", "inverse", "associativity"};
    o.status = kNegative;
    o.report["valid"] = false;
    o.report["failure"] = std::string("group ") + names[static_cast<int>(r.failure)];
    o.report["witness"] = {{"where", where}, {"indices", r.witness}, {"message", r.message}};
    o.lines.push_back("group: INVALID: " + r.message);
    return false;
  }

  std::pair<Bundle<Field>, DeformationJet<Field>> load_jet(const Json& doc, const std::string& what) {
    auto [b, coeffs] = jet_from_json(field_, doc);
    DeformationJet<Field> jet(b.complex(cfg_.limits()), std::move(coeffs));
    if (!jet.fully_verified()) {
      const auto res = jet.residual(jet.verified_order() + 1);
      std::size_t first = 0;
      while (is_zero(res.coefficients[first])) ++first;
      throw Negative{what + " fails associativity at order " + std::to_string(jet.verified_order() + 1),
                     {{"order", jet.verified_order() + 1}, {"residual_index", first}}};
    }
    return {std::move(b), std::move(jet)};
  }

  void report_equivalence(Outcome& o, const Bundle<Field>& b, const EquivalenceResult<Field>& res, const char* noun) {
    Json stages = Json::array();
    for (const auto& s : res.stages) stages.push_back(to_json(field_, s));
    o.report["stages"] = std::move(stages);
    if (res.ok()) {
      Json psi = Json::array();
      for (const auto& p : res.iso->psi) psi.push_back(to_json(field_, p));
      o.report[noun] = {{"order", res.iso->order()}, {"psi", std::move(psi)}};
      o.lines.push_back(std::string(noun) + " found to order " + std::to_string(res.iso->order()) + " (Psi = id + sum psi_i t^i)");
      for (std::size_t i = 0; i < res.iso->psi.size(); ++i)
        append(o.lines, cochain_text(field_, b.algebra.labels(), res.iso->psi[i], "psi" + std::to_string(i + 1)));
      return;
    }
    o.status = kNegative;
    const auto& last = res.stages.back();
    o.report["failed_order"] = *res.failed_order;
    o.report["witness"] = {{"kind", to_string(last.classification.kind)},
                           {"class_coordinates", scalars(last.classification.class_coordinates)}};
    if (res.unrestricted_solvable) o.report["unrestricted_solvable"] = *res.unrestricted_solvable;
    o.lines.push_back("no " + std::string(noun) + " at order " + std::to_string(*res.failed_order) + ": obstruction " +
                      to_string(last.classification.kind) + " " + join_scalars(last.classification.class_coordinates));
    if (res.unrestricted_solvable)
      o.lines.push_back(std::string("  without the invariance constraint: ") +
                        (*res.unrestricted_solvable ? "solvable" : "also obstructed"));
  }

  void emit_document(Outcome& o, const std::string& key, const Json& doc) {
    if (cfg_.out.empty()) {
      o.report[key] = doc;
      return;
    }
    std::ofstream f(cfg_.out);
    if (!f) throw DocumentError(cfg_.out, "cannot write output file");
    f << doc.dump(2) << "\n";
    o.report["output"] = cfg_.out;
    o.lines.push_back("wrote " + cfg_.out);
  }

  Outcome finish(Outcome o) {
    if (!o.report.contains("valid")) o.report["valid"] = true;
    o.report["status"] = o.status;
    return o;
  }
};

Json load_input(const std::string& path) {
  if (!path.empty() && path[0] == '@') return Json{{"catalog", path.substr(1)}};
  return read_json_file(path);
}

FieldSpec resolve_field(const Config& cfg, const std::vector<Json>& docs) {
  if (!cfg.field.empty()) {
    try {
      return FieldSpec::parse(cfg.field);
    } catch (const FieldError& e) {
      throw DocumentError("--field", e.what());
    }
  }
  return docs.empty() ? FieldSpec{} : document_field(docs.front());
}

template <class Field>
Outcome dispatch(const std::string& cmd, Field field, const Config& cfg, const std::vector<Json>& docs) {
  Runner<Field> r(std::move(field), cfg);
  try {
    if (cmd == "validate") return r.validate(docs.at(0));
    if (cmd == "hh") return r.hh(docs.at(0));
    if (cmd == "lift") return r.lift_cmd(docs.at(0));
    if (cmd == "equiv") return r.equiv(docs.at(0), docs.at(1));
    if (cmd == "rigid") return r.rigid(docs.at(0));
    if (cmd == "fixed") return r.fixed(docs.at(0));
    if (cmd == "check") return r.check(docs.at(0));
    if (cmd == "catalog") return r.catalog();
  } catch (const Negative& n) {
    Outcome o;
    o.status = kNegative;
    o.report = {{"command", cmd}, {"valid", false}, {"error", n.message}, {"witness", n.witness}, {"status", kNegative}};
    o.lines.push_back(n.message);
    return o;
  } catch (const InvarianceError& e) {
    Outcome o;
    o.status = kNegative;
    o.report = {{"command", cmd}, {"valid", false}, {"error", e.what()}, {"witness", {{"invariant", false}}}, {"status", kNegative}};
    o.lines.push_back(e.what());
    return o;
  }
  throw std::logic_error("unknown command " + cmd);
}

int run(int argc, char** argv) {
  Config cfg;
  CLI::App app{"hochkit: Hochschild cohomology and equivariant deformations of finite-dimensional algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();
  app.add_option("--field", cfg.field, "Q or Fp:<p> (default: the document's field, else Q)");
  app.add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-coeffs", cfg.max_coeffs, "refuse cochain spaces with more coefficients")->check(CLI::PositiveNumber);
  app.add_option("--max-degree", cfg.max_degree, "largest cochain degree that may be built")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "check an algebra, group, or algebra+group+action document");
  validate->add_option("doc", cfg.inputs, "document (or @catalog_name)")->required()->expected(1);

  auto* hh = app.add_subcommand("hh", "Hochschild cohomology in one degree");
  hh->add_option("doc", cfg.inputs, "algebra or bundle document (or @catalog_name)")->required()->expected(1);
  hh->add_option("--degree", cfg.degree, "cohomological degree");
  hh->add_flag("--equivariant", cfg.equivariant, "use the invariant subcomplex");
  hh->add_option("--classify", cfg.classify, "also classify this cochain");

  auto* lift_app = app.add_subcommand("lift", "lift an infinitesimal deformation order by order");
  lift_app->add_option("doc", cfg.inputs, "bundle document (or @catalog_name)")->required()->expected(1);
  lift_app->add_option("--order", cfg.order, "target order N");
  lift_app->add_option("--infinitesimal", cfg.infinitesimal, "m1 cochain document (default: the bundle's seed m1)");
  lift_app->add_option("--out", cfg.out, "write the jet here");

  auto* equiv = app.add_subcommand("equiv", "find an invariant isomorphism between two jets");
  equiv->add_option("jets", cfg.inputs, "two jet documents")->required()->expected(2);
  equiv->add_option("--order", cfg.order, "order to match (default: the smaller jet order)");
  equiv->add_flag("--diagnose", cfg.diagnose, "on failure, also try without the invariance constraint");

  auto* rigid = app.add_subcommand("rigid", "decide whether a jet is trivial");
  rigid->add_option("jet", cfg.inputs, "jet document")->required()->expected(1);
  rigid->add_option("--order", cfg.order, "order to check (default: the jet order)");
  rigid->add_flag("--diagnose", cfg.diagnose, "on failure, also try without the invariance constraint");

  auto* fixed = app.add_subcommand("fixed", "restrict a jet to the fixed points of a subgroup");
  fixed->add_option("jet", cfg.inputs, "jet document")->required()->expected(1);
  fixed->add_option("--subgroup", cfg.subgroup, "comma-separated element indices (default: the whole group)");
  fixed->add_option("--out", cfg.out, "write the restricted jet here");

  auto* check = app.add_subcommand("check", "randomized invariance and complex checks");
  check->add_option("doc", cfg.inputs, "bundle document (or @catalog_name)")->required()->expected(1);
  check->add_option("--degree", cfg.degree, "cochain degree");
  check->add_option("--samples", cfg.samples, "number of random cochains");
  check->add_option("--seed", cfg.seed, "random seed");

  auto* catalog = app.add_subcommand("catalog", "built-in algebras");
  catalog->require_subcommand(1);
  catalog->add_subcommand("list", "list entries")->callback([&] { cfg.catalog_action = "list"; });
  auto* exp = catalog->add_subcommand("export", "write an entry as a bundle document");
  exp->add_option("name", cfg.catalog_name)->required();
  exp->add_option("--out", cfg.out, "output path");
  exp->callback([&] { cfg.catalog_action = "export"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  const bool json = cfg.format == "json";
  try {
    std::vector<Json> docs;
    for (const auto& p : cfg.inputs) docs.push_back(load_input(p));
    const FieldSpec spec = resolve_field(cfg, docs);
    const Outcome o = spec.is_rational() ? dispatch(cmd, RationalField{}, cfg, docs)
                                         : dispatch(cmd, PrimeField{spec.prime}, cfg, docs);
    if (json) {
      std::cout << o.report.dump(2) << "\n";
    } else {
      for (const auto& l : o.lines) std::cout << l << "\n";
    }
    return o.status;
  } catch (const std::exception& e) {
    const auto* doc_error = dynamic_cast<const DocumentError*>(&e);
    if (json) {
      Json err{{"command", cmd}, {"status", kInputError}, {"error", e.what()}};
      if (doc_error) err["location"] = doc_error->where();
      std::cout << err.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kInputError;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

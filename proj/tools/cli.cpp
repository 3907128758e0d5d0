#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "ocat/corpus.hpp"
#include "ocat/dsl.hpp"
#include "ocat/equivalence.hpp"
#include "ocat/jetdiff.hpp"
#include "ocat/report_json.hpp"
#include "ocat/spencer.hpp"

namespace ocat::cli {

namespace {

namespace fs = std::filesystem;

// Anything that means "could not run": bad files, names, flags.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot write file");
  out << text;
}

dsl::Workspace load_dsl(const std::string& path) {
  std::string text = read_file(path);
  try {
    return dsl::resolve(dsl::parse(text));
  } catch (const dsl::DslError& e) {
    throw InputError(path + ":" + e.what());
  }
}

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

template <class M>
std::vector<std::pair<std::string, const typename M::mapped_type*>> select(const dsl::Workspace& ws, const M& m,
                                                                           const std::string& name, const char* what,
                                                                           const std::string& path) {
  std::vector<std::pair<std::string, const typename M::mapped_type*>> out;
  if (!name.empty()) {
    auto it = m.find(name);
    if (it == m.end()) throw InputError(path + ": no " + what + " named '" + name + "'");
    out.emplace_back(name, &it->second);
    return out;
  }
  for (const auto& n : ws.order)
    if (auto it = m.find(n); it != m.end()) out.emplace_back(n, &it->second);
  if (out.empty()) throw InputError(path + ": no " + what + " declared");
  return out;
}

template <class M>
const typename M::mapped_type& one(const dsl::Workspace& ws, const M& m, const std::string& name, const char* what,
                                   const std::string& path) {
  auto all = select(ws, m, name, what, path);
  if (all.size() != 1) throw InputError(path + ": several " + what + "s declared; pick one by name");
  return *all.front().second;
}

Cell cell_named(const FiniteOmegaCat& cat, const std::string& name) {
  auto c = cat.find(name);
  if (!c) throw InputError("no cell named '" + name + "' in category " + cat.name());
  return *c;
}

Rational rational(const Json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
  } catch (const std::invalid_argument&) {
  }
  throw InputError(where + ": expected a rational (string like \"-2/3\" or an integer)");
}

QMatrix matrix(const Json& rows, std::size_t cols, const std::string& where) {
  if (!rows.is_array()) throw InputError(where + ": expected an array of rows");
  QMatrix m(0, cols);
  for (const auto& r : rows) {
    if (!r.is_array() || r.size() != cols)
      throw InputError(where + ": every row needs " + std::to_string(cols) + " entries");
    std::vector<Rational> row;
    for (const auto& x : r) row.push_back(rational(x, where));
    m.append_row(row);
  }
  return m;
}

int integer(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw InputError(where + ": field '" + key + "' must be an integer");
  return j.at(key).get<int>();
}

SymbolInput load_symbol(const std::string& path) {
  Json j = load_json(path);
  if (!j.is_object()) throw InputError(path + ": expected a JSON object");
  SymbolInput sym{integer(j, "n", path), integer(j, "k", path), integer(j, "q", path), {}};
  if (sym.n < 1 || sym.n > 6 || sym.k < 1 || sym.k > 6 || sym.q < 0 || sym.q > 6)
    throw InputError(path + ": need 1 <= n, k <= 6 and 0 <= q <= 6");
  if (!j.contains("relations")) throw InputError(path + ": missing field 'relations'");
  sym.relations = matrix(j.at("relations"), sym.ambient(), path + ": relations");
  if (j.contains("labels")) {
    std::vector<std::string> want;
    for (const auto& m : monomials(sym.n, sym.q)) want.push_back(monomial_label(m));
    const Json& l = j.at("labels");
    if (!l.is_array() || l.size() != want.size()) throw InputError(path + ": labels do not match the monomial order");
    for (std::size_t i = 0; i < want.size(); ++i)
      if (!l[i].is_string() || l[i].get<std::string>() != want[i])
        throw InputError(path + ": label " + std::to_string(i) + " should be '" + want[i] + "'");
  }
  return sym;
}

struct AlgebraFile {
  AlgebraRef algebra;
  std::vector<FiniteModuleData> modules;  // in file order
};

AlgebraFile load_algebra(const std::string& path) {
  Json j = load_json(path);
  if (!j.is_object()) throw InputError(path + ": expected a JSON object");
  FiniteAlgebra a;
  a.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "A";
  if (!j.contains("basis") || !j["basis"].is_array() || j["basis"].empty())
    throw InputError(path + ": 'basis' must be a non-empty array of labels");
  for (const auto& l : j["basis"]) {
    if (!l.is_string()) throw InputError(path + ": basis labels must be strings");
    a.labels.push_back(l.get<std::string>());
  }
  const std::size_t d = a.dim();
  if (!j.contains("unit") || !j["unit"].is_array() || j["unit"].size() != d)
    throw InputError(path + ": 'unit' needs " + std::to_string(d) + " entries");
  for (const auto& x : j["unit"]) a.unit.push_back(rational(x, path + ": unit"));
  const Json& st = j.contains("structure") ? j["structure"] : Json();
  if (!st.is_array() || st.size() != d) throw InputError(path + ": 'structure' must be a dim×dim×dim array");
  for (const auto& plane : st) {
    if (!plane.is_array() || plane.size() != d) throw InputError(path + ": 'structure' must be a dim×dim×dim array");
    a.structure.emplace_back();
    for (const auto& row : plane) {
      if (!row.is_array() || row.size() != d) throw InputError(path + ": 'structure' must be a dim×dim×dim array");
      a.structure.back().emplace_back();
      for (const auto& x : row) a.structure.back().back().push_back(rational(x, path + ": structure"));
    }
  }
  AlgebraFile out{std::make_shared<const FiniteAlgebra>(std::move(a)), {}};
  if (!j.contains("modules") || !j["modules"].is_object()) throw InputError(path + ": 'modules' must be an object");
  for (const auto& [name, m] : j["modules"].items()) {
    std::string where = path + ": module " + name;
    FiniteModuleData P;
    P.name = name;
    P.algebra = out.algebra;
    const int dim = integer(m, "dim", where);
    if (dim < 0) throw InputError(where + ": negative dim");
    P.dim = static_cast<std::size_t>(dim);
    if (!m.contains("actions") || !m["actions"].is_array() || m["actions"].size() != d)
      throw InputError(where + ": 'actions' needs one matrix per basis element");
    for (const auto& act : m["actions"]) {
      QMatrix q = matrix(act, P.dim, where + ": actions");
      if (q.rows() != P.dim) throw InputError(where + ": action matrices must be dim×dim");
      P.actions.push_back(q);
    }
    out.modules.push_back(std::move(P));
  }
  return out;
}

Json witness_json(const FiniteOmegaCat& cat, const EquivalenceWitness& w) {
  Json j;
  j["source"] = cat.name_of(w.source);
  j["target"] = cat.name_of(w.target);
  if (w.by_equality()) {
    j["equality"] = true;
    return j;
  }
  j["forward"] = cat.name_of(w.forward);
  j["backward"] = cat.name_of(w.backward);
  j["sub"] = Json::array();
  for (const auto& s : w.sub) j["sub"].push_back(witness_json(cat, s));
  return j;
}

Json names(const FiniteOmegaCat& cat, const std::vector<Cell>& cells) {
  Json out = Json::array();
  for (Cell c : cells) out.push_back(cat.name_of(c));
  return out;
}

Json sizes(const std::vector<std::size_t>& v) { return Json(v); }

std::string category_text(const FiniteOmegaCat& cat) {
  return dsl::print(dsl::Presentation{{dsl::category_decl(cat)}});
}

// ---- corpus -----------------------------------------------------------------

std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    if (ok)
      out += c;
    else if (!out.empty() && out.back() != '-')
      out += '-';
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "x" : out;
}

std::string numbered(int i, const std::string& name, const char* ext) {
  std::string n = std::to_string(i);
  if (n.size() < 2) n = "0" + n;
  return n + "-" + slug(name) + ext;
}

Json symbol_json(const SymbolInput& sym) {
  Json j;
  j["n"] = sym.n;
  j["k"] = sym.k;
  j["q"] = sym.q;
  Json labels = Json::array();
  for (const auto& m : monomials(sym.n, sym.q)) labels.push_back(monomial_label(m));
  j["labels"] = labels;
  j["relations"] = Json::array();
  for (std::size_t r = 0; r < sym.relations.rows(); ++r) {
    Json row = Json::array();
    for (const auto& x : sym.relations.row(r)) row.push_back(to_string(x));
    j["relations"].push_back(row);
  }
  return j;
}

Json matrix_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (const auto& x : m.row(r)) row.push_back(to_string(x));
    rows.push_back(row);
  }
  return rows;
}

Json algebra_json(int m) {
  auto a = std::make_shared<const FiniteAlgebra>(truncated_polynomials(m));
  Json j;
  j["name"] = a->name;
  j["basis"] = a->labels;
  Json unit = Json::array();
  for (const auto& x : a->unit) unit.push_back(to_string(x));
  j["unit"] = unit;
  j["structure"] = Json::array();
  for (const auto& plane : a->structure) {
    Json p = Json::array();
    for (const auto& row : plane) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(to_string(x));
      p.push_back(r);
    }
    j["structure"].push_back(p);
  }
  auto A = regular_module(a);
  for (const auto& [name, P] : {std::pair<std::string, FiniteModuleData>{"A", A}, {"AA", direct_sum(A, A)}}) {
    Json mod;
    mod["dim"] = P.dim;
    mod["actions"] = Json::array();
    for (const auto& act : P.actions) mod["actions"].push_back(matrix_json(act));
    j["modules"][name] = mod;
  }
  return j;
}

// ---- commands ---------------------------------------------------------------

struct Context {
  std::vector<std::string> argv;
  Document doc;
  std::string text;  // set by commands whose output is not a report
};

struct Options {
  std::string file, name, category, presheaf, object, beta, cone, diagram, adjunction, duality, module, out;
  std::string I, a, x, kind = "limit";
  std::vector<std::string> cells;
  int n = 0, rmax = 4, s = 0;
  bool weak = false;
  long seed = 0;
};

void cmd_check_category(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  Json cats = Json::array();
  for (const auto& [name, cat] : select(ws, ws.categories, o.name, "category", o.file)) {
    auto rep = validate_category(**cat, o.weak);
    c.doc.reports.push_back(rep);
    Json counts = Json::array();
    for (int d = 0; d <= (*cat)->top_degree(); ++d) counts.push_back((*cat)->cells_of_degree(d).size());
    cats.push_back({{"name", name}, {"cells_per_degree", counts}});
  }
  c.doc.data["categories"] = cats;
}

void cmd_check_functor(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  for (const auto& [name, f] : select(ws, ws.functors, o.name, "functor", o.file))
    c.doc.reports.push_back(check_functor(*f, o.weak ? Strictness::weak : Strictness::strict));
}

void cmd_check_modification(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  for (const auto& [name, m] : select(ws, ws.modifications, o.name, "modification", o.file)) {
    auto rep = check_modification((*m)->modification());
    rep.subject = name;
    c.doc.reports.push_back(rep);
  }
}

const FiniteOmegaCat& pick_category(const dsl::Workspace& ws, const Options& o) {
  return *one(ws, ws.categories, o.category, "category", o.file);
}

void cmd_equiv(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  const auto& cat = pick_category(ws, o);
  if (o.cells.size() != 2) throw InputError("equiv needs two cell names");
  Cell x = cell_named(cat, o.cells[0]), y = cell_named(cat, o.cells[1]);
  if (cat.degree(x) != cat.degree(y)) throw InputError("equiv: cells of different degrees");
  EquivalenceEngine eng(cat);
  CheckReport rep;
  rep.subject = o.cells[0] + " ~ " + o.cells[1];
  auto w = eng.minimal_witness(x, y);
  if (w) {
    rep.pass("equiv.witness");
    if (!eng.replay(w->first)) rep.fail("equiv.replay", "witness does not replay through the tables");
    rep.pass("equiv.replay");
    c.doc.data["equivalent"] = true;
    c.doc.data["degree"] = w->second;
    c.doc.data["witness"] = witness_json(cat, w->first);
  } else {
    rep.fail("equiv.witness", "no witness", {o.cells[0], o.cells[1]});
    c.doc.data["equivalent"] = false;
  }
  c.doc.reports.push_back(rep);
}

void cmd_degree(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  const auto& cat = pick_category(ws, o);
  if (o.cells.empty()) {
    c.doc.data["degree"] = category_degree(cat);
    return;
  }
  if (o.cells.size() != 2) throw InputError("degree needs zero or two cell names");
  Cell x = cell_named(cat, o.cells[0]), y = cell_named(cat, o.cells[1]);
  CheckReport rep;
  rep.subject = o.cells[0] + " ~ " + o.cells[1];
  if (auto d = pair_degree(cat, x, y)) {
    rep.pass("degree.equivalent");
    c.doc.data["degree"] = *d;
  } else {
    rep.fail("degree.equivalent", "no witness", {o.cells[0], o.cells[1]});
    c.doc.data["degree"] = nullptr;
  }
  c.doc.reports.push_back(rep);
}

void cmd_classify(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  const auto& cat = pick_category(ws, o);
  if (o.cells.size() != 1) throw InputError("classify needs one cell name");
  Cell f = cell_named(cat, o.cells[0]);
  if (cat.degree(f) < 1) throw InputError("classify: '" + o.cells[0] + "' is an object");
  auto k = classify_arrow(cat, f);
  c.doc.data["cell"] = o.cells[0];
  c.doc.data["monic"] = k.monic;
  c.doc.data["epic"] = k.epic;
  c.doc.data["equivalence"] = k.equivalence;
}

void cmd_homotopy(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  const auto& cat = pick_category(ws, o);
  if (o.n < 0) throw InputError("homotopy: --n must be >= 0");
  auto g = homotopy_group(cat, cell_named(cat, o.I), cell_named(cat, o.a), cell_named(cat, o.x), o.n);
  c.doc.reports.push_back(g.report);
  c.doc.data["n"] = g.n;
  c.doc.data["order"] = g.order();
  c.doc.data["base_point"] = cat.name_of(g.base_point);
  Json classes = Json::array();
  for (const auto& cl : g.classes) classes.push_back(names(cat, cl));
  c.doc.data["classes"] = classes;
  c.doc.data["unit_class"] = g.unit_class;
  c.doc.data["op"] = g.op;
}

void cmd_yoneda(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  const auto& F = one(ws, ws.presheaves, o.presheaf, "presheaf", o.file);
  std::vector<Cell> objs = o.object.empty() ? F->base->objects() : std::vector<Cell>{cell_named(*F->base, o.object)};
  for (Cell a : objs) {
    if (F->base->degree(a) != 0) throw InputError("yoneda: '" + o.object + "' is not an object");
    auto rep = yoneda_check(F->base, a, F);
    rep.subject = F->name + " at " + F->base->name_of(a);
    c.doc.reports.push_back(rep);
  }
}

void cmd_representable(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  const auto& F = one(ws, ws.presheaves, o.presheaf, "presheaf", o.file);
  Cell a = cell_named(*F->base, o.object);
  if (F->base->degree(a) != 0) throw InputError("representable: '" + o.object + "' is not an object");
  const auto& fiber = *F->fiber(a);
  Cell beta = cell_named(fiber, o.beta);
  if (fiber.degree(beta) != 0) throw InputError("representable: '" + o.beta + "' is not an object of the fiber");
  auto r = representability_check(F, a, beta);
  c.doc.reports.push_back(r.report);
  c.doc.data["strict"] = r.strict;
  c.doc.data["weak"] = r.weak;
  c.doc.negative = !r.weak && !r.strict;
}

void cmd_limit(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  if (!o.diagram.empty()) {
    const auto& D = one(ws, ws.diagrams, o.diagram, "diagram", o.file);
    ConeKind kind = o.kind == "colimit" ? ConeKind::colimit : ConeKind::limit;
    auto found = find_strict_limit(D, kind);
    c.doc.data["kind"] = o.kind;
    if (found) {
      c.doc.data["vertex"] = D.target->name_of(found->vertex);
      c.doc.data["edges"] = names(*D.target, found->edges);
      c.doc.reports.push_back(verify_strict_limit(D, *found, false));
    } else {
      c.doc.data["vertex"] = nullptr;
      c.doc.negative = true;
    }
    return;
  }
  for (const auto& [name, dc] : select(ws, ws.cones, o.cone, "cone", o.file)) {
    const auto& [D, cone] = *dc;
    auto shape = check_cone(D, cone);
    shape.subject = name;
    c.doc.reports.push_back(shape);
    if (!shape.passed()) continue;
    auto rep = verify_strict_limit(D, cone);
    rep.subject = name;
    c.doc.data[name] = {{"strict", rep.fact_value("strict")}, {"weak", rep.fact_value("weak")}};
    if (rep.fact_value("strict") != "true") c.doc.negative = true;
    c.doc.reports.push_back(rep);
  }
}

void cmd_adjoint(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  for (const auto& [name, adj] : select(ws, ws.adjunctions, o.adjunction, "adjunction", o.file)) {
    auto uc = check_adjunction_unit_counit(*adj);
    uc.subject = name;
    c.doc.reports.push_back(uc);
    auto ue = check_universal_elements(*adj);
    ue.subject = name + " (universal elements)";
    c.doc.reports.push_back(ue);
  }
}

void cmd_duality(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  for (const auto& [name, d] : select(ws, ws.dualities, o.duality, "duality", o.file)) {
    auto rep = check_concrete_duality(*d);
    rep.subject = name;
    c.doc.reports.push_back(rep);
  }
}

void cmd_spencer(const Options& o, Context& c) {
  SymbolInput sym = load_symbol(o.file);
  if (o.rmax < 1 || o.rmax > 8) throw InputError("spencer: --rmax must be in 1..8");
  SpencerTable tab;
  auto rep = check_involutive(sym, o.rmax, &tab);
  c.doc.reports.push_back(rep);
  c.doc.data["n"] = sym.n;
  c.doc.data["k"] = sym.k;
  c.doc.data["q"] = sym.q;
  c.doc.data["rmax"] = o.rmax;
  c.doc.data["prolongation_dims"] = sizes(tab.prolongation_dims);
  Json rows = Json::array();
  for (std::size_t i = 0; i < tab.cohomology.size(); ++i)
    rows.push_back({{"r", i + 1}, {"dims", sizes(tab.dims[i])}, {"cohomology", sizes(tab.cohomology[i])}});
  c.doc.data["table"] = rows;
  c.doc.data["involutive"] = rep.fact_value("involutive") == "true";
  if (rep.fact_value("involutive") != "true") c.doc.negative = true;
}

void cmd_jetdiff(const Options& o, Context& c) {
  auto file = load_algebra(o.file);
  if (o.s < 0 || o.s > 6) throw InputError("jetdiff: --s must be in 0..6");
  auto alg = check_algebra(*file.algebra);
  c.doc.reports.push_back(alg);
  if (!alg.passed()) return;
  Json mods = Json::array();
  bool found = o.module.empty();
  for (const auto& P : file.modules) {
    if (!o.module.empty() && P.name != o.module) continue;
    found = true;
    auto mrep = check_module(P);
    mrep.subject = P.name;
    c.doc.reports.push_back(mrep);
    if (!mrep.passed()) continue;
    auto rep = verify_vinogradov_duality(P, o.s);
    rep.subject = P.name + " s=" + std::to_string(o.s);
    c.doc.reports.push_back(rep);
    mods.push_back({{"module", P.name},
                    {"s", o.s},
                    {"dim_diff", rep.fact_value("dim_diff")},
                    {"dim_jet", rep.fact_value("dim_jet")},
                    {"dim_hom_jet", rep.fact_value("dim_hom_jet")},
                    {"dim_hom_diff", rep.fact_value("dim_hom_diff")}});
  }
  if (!found) throw InputError(o.file + ": no module named '" + o.module + "'");
  c.doc.data["modules"] = mods;
}

void emit_category(const Options& o, Context& c, FiniteOmegaCat cat) {
  auto rep = validate_category(cat, false);
  c.doc.reports.push_back(rep);
  std::string text = category_text(cat);
  c.doc.data["presentation"] = text;
  if (!o.out.empty()) write_file(o.out, text);
}

void cmd_truncate(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  const auto& cat = pick_category(ws, o);
  if (o.n < 0) throw InputError("truncate: --n must be >= 0");
  auto t = truncate(cat, o.n);
  t.set_name(cat.name() + "_trunc" + std::to_string(o.n));
  emit_category(o, c, std::move(t));
}

void cmd_opposite(const Options& o, Context& c) {
  auto ws = load_dsl(o.file);
  const auto& cat = pick_category(ws, o);
  auto op = opposite(cat);
  op.set_name(cat.name() + "_op");
  emit_category(o, c, std::move(op));
}

void cmd_print(const Options& o, Context& c) {
  std::string text = read_file(o.file);
  try {
    c.text = dsl::print(dsl::parse(text));
  } catch (const dsl::DslError& e) {
    throw InputError(o.file + ":" + e.what());
  }
}

void cmd_export_corpus(const Options& o, Context& c) {
  c.doc.data["files"] = export_corpus(o.out);
}

std::string summary(const std::string& command, const Document& d) {
  std::size_t failed = 0;
  for (const auto& r : d.reports) failed += r.passed() ? 0 : 1;
  std::string s = command + ": " + std::to_string(d.reports.size()) + " report(s), " + std::to_string(failed) +
                  " failing; verdict " + (d.passed() ? "pass" : "fail") + "\n";
  for (const auto& r : d.reports)
    for (const auto& f : r.findings) {
      s += "  " + r.subject + ": " + f.check + ": " + f.message;
      for (const auto& w : f.witnesses) s += " [" + w + "]";
      s += "\n";
    }
  return s;
}

std::string error_document(const std::vector<std::string>& argv, const std::string& message) {
  Json j;
  j["tool"] = kToolName;
  j["schema"] = kReportSchema;
  j["version"] = kToolVersion;
  j["command"] = argv;
  j["verdict"] = "error";
  j["error"] = message;
  return dump(j);
}

}  // namespace

std::vector<std::string> export_corpus(const std::string& dir) {
  if (dir.empty()) throw InputError("export-corpus needs a directory");
  const fs::path root(dir);
  std::vector<std::string> written;
  Json manifest = Json::array();
  auto put = [&](const std::string& rel, const std::string& text) {
    write_file(root / rel, text);
    written.push_back(rel);
  };
  auto expect = [&](std::vector<std::string> args, int code) {
    manifest.push_back({{"args", std::move(args)}, {"expect", code}});
  };

  int i = 0;
  for (const auto& e : corpus::categories()) {
    std::string rel = "categories/" + numbered(++i, e.name, ".ocat");
    put(rel, category_text(*e.cat));
    expect({"check-category", rel}, kPass);
    expect({"degree", rel}, kPass);
    expect({"opposite", rel}, kPass);
    expect({"truncate", rel, "--n", "0"}, kPass);
  }
  i = 0;
  for (const auto& e : corpus::presheaves()) {
    dsl::Exporter ex;
    ex.presheaf(e.presheaf, "P");
    std::string rel = "presheaves/" + numbered(++i, e.name, ".ocat");
    put(rel, dsl::print(ex.presentation()));
    expect({"yoneda", rel, "--presheaf", "P"}, kPass);
  }
  i = 0;
  for (const auto& e : corpus::adjunctions()) {
    dsl::Exporter ex;
    ex.adjunction(e.adjunction, "adj");
    std::string rel = "adjunctions/" + numbered(++i, e.name, ".ocat");
    put(rel, dsl::print(ex.presentation()));
    expect({"adjoint", rel}, kPass);
    expect({"check-functor", rel}, kPass);
  }
  i = 0;
  for (const auto& inst : {corpus::terminal_limit(), corpus::diamond_meet(), corpus::binary_product_2cat(),
                           corpus::two_cell_equalizer()}) {
    dsl::Exporter ex;
    ex.cone(inst.diagram, inst.cone, "cone");
    std::string rel = "limits/" + numbered(++i, inst.name, ".ocat");
    put(rel, dsl::print(ex.presentation()));
    expect({"limit", rel}, kPass);
  }
  i = 0;
  for (const auto& d : {corpus::terminal_self_duality(), corpus::pointed_self_duality(), corpus::stone_duality()}) {
    dsl::Exporter ex;
    ex.duality(d, "duality");
    std::string rel = "dualities/" + numbered(++i, d.adjunction.name, ".ocat");
    put(rel, dsl::print(ex.presentation()));
    expect({"duality", rel}, kPass);
  }

  std::vector<std::pair<std::string, SymbolInput>> symbols;
  for (int n = 1; n <= 3; ++n)
    for (int q = 1; q <= 2; ++q)
      symbols.emplace_back("full-n" + std::to_string(n) + "-q" + std::to_string(q), full_symbol(n, 1, q));
  symbols.emplace_back("uxx", monomial_symbol(2, 2, {{2, 0}}));
  symbols.emplace_back("uxx-uyy", monomial_symbol(2, 2, {{2, 0}, {0, 2}}));
  symbols.emplace_back("uxy", monomial_symbol(2, 2, {{1, 1}}));
  symbols.emplace_back("uxx-uyy-3d", monomial_symbol(3, 2, {{2, 0, 0}, {0, 2, 0}}));
  {
    SymbolInput cr{2, 2, 1, QMatrix::from_rows({{1, 0, 0, -1}, {0, 1, 1, 0}}, 4)};
    symbols.emplace_back("cauchy-riemann", cr);
  }
  for (const auto& [name, sym] : symbols) {
    std::string rel = "spencer/" + name + ".json";
    put(rel, dump(symbol_json(sym)));
    bool involutive = check_involutive(sym, 4).fact_value("involutive") == "true";
    expect({"spencer", rel, "--rmax", "4"}, involutive ? kPass : kNegative);
  }
  for (int m = 1; m <= 4; ++m) {
    std::string rel = "jetdiff/trunc" + std::to_string(m) + ".json";
    put(rel, dump(algebra_json(m)));
    for (int s = 0; s <= 3; ++s) expect({"jetdiff", rel, "--s", std::to_string(s)}, kPass);
  }

  // Hand-picked negatives and input errors.
  put("samples/arrow.ocat",
      "# f has no inverse, so a and b are not equivalent\n"
      "category Arrow max_degree 1 {\n  cell a : 0\n  cell b : 0\n  cell f : 1 a -> b\n  derive\n}\n");
  expect({"equiv", "samples/arrow.ocat", "a", "b"}, kNegative);
  expect({"classify", "samples/arrow.ocat", "f"}, kPass);
  put("samples/broken-unit.ocat",
      "# f ∘ e(a) is recorded as g, breaking the unit law\n"
      "category Broken max_degree 1 {\n  cell a : 0\n  cell b : 0\n  cell f : 1 a -> b\n  cell g : 1 a -> b\n"
      "  cell \"e(a)\" : 1 a -> a\n  cell \"e(b)\" : 1 b -> b\n  identity a = \"e(a)\"\n  identity b = \"e(b)\"\n"
      "  compose 1 : \"e(a)\" . \"e(a)\" = \"e(a)\"\n  compose 1 : \"e(b)\" . \"e(b)\" = \"e(b)\"\n"
      "  compose 1 : f . \"e(a)\" = g\n  compose 1 : g . \"e(a)\" = g\n"
      "  compose 1 : \"e(b)\" . f = f\n  compose 1 : \"e(b)\" . g = g\n}\n");
  expect({"check-category", "samples/broken-unit.ocat"}, kNegative);
  put("samples/unresolved.ocat", "category C max_degree 1 {\n  cell a : 0\n  cell f : 1 a -> nowhere\n}\n");
  expect({"check-category", "samples/unresolved.ocat"}, kInputError);
  expect({"equiv", "samples/arrow.ocat", "a", "missing"}, kInputError);
  put("samples/homotopy.ocat",
      "# one object with a loop of order two\n"
      "category Z2 max_degree 1 {\n  cell \"*\" : 0\n  cell g : 1 \"*\" -> \"*\"\n  derive\n"
      "  compose 1 : g . g = \"e(*)\"\n}\n");
  expect({"homotopy", "samples/homotopy.ocat", "--I", "*", "--a", "*", "--x", "e(*)", "--n", "0"}, kPass);
  expect({"homotopy", "samples/homotopy.ocat", "--I", "*", "--a", "*", "--x", "e(*)", "--n", "1"}, kPass);
  expect({"print", "samples/homotopy.ocat"}, kPass);

  write_file(root / "manifest.json", dump(manifest));
  written.push_back("manifest.json");
  return written;
}

Outcome run(const std::vector<std::string>& args) {
  Outcome result;
  Context ctx;
  ctx.argv = args;
  ctx.doc.command = args;
  Options o;

  CLI::App app{"Finite higher-category, Spencer and jet/Diff checker", "ocat"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "Reserved; every algorithm is deterministic");
  std::function<void(const Options&, Context&)> handler;

  auto sub = [&](const char* name, const char* help, void (*fn)(const Options&, Context&)) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&handler, fn] { handler = fn; });
    return s;
  };
  auto file = [&](CLI::App* s, const char* what = "Input file") { s->add_option("file", o.file, what)->required(); };

  auto* cc = sub("check-category", "Validate category axioms", cmd_check_category);
  file(cc);
  cc->add_option("--name", o.name, "Only this category");
  cc->add_flag("--weak", o.weak, "Check laws up to equivalence");
  auto* cf = sub("check-functor", "Validate functors", cmd_check_functor);
  file(cf);
  cf->add_option("--name", o.name, "Only this functor");
  cf->add_flag("--weak", o.weak, "Preserve composites up to equivalence");
  auto* cm = sub("check-modification", "Validate modifications", cmd_check_modification);
  file(cm);
  cm->add_option("--name", o.name, "Only this modification");
  for (auto [name, help, fn, arity] :
       std::initializer_list<std::tuple<const char*, const char*, void (*)(const Options&, Context&), int>>{
           {"equiv", "Search an equivalence witness between two cells", cmd_equiv, 2},
           {"degree", "Degree of a category or of an equivalent pair", cmd_degree, -1},
           {"classify", "Monic / epic / equivalence arrow", cmd_classify, 1}}) {
    auto* s = sub(name, help, fn);
    file(s);
    s->add_option("--category", o.category, "Category to use when the file has several");
    auto* cells = s->add_option("cells", o.cells, "Cell names");
    if (arity > 0) cells->expected(arity)->required();
    else cells->expected(0, 2);
  }
  auto* hg = sub("homotopy", "Homotopy group of a pointed object", cmd_homotopy);
  file(hg);
  hg->add_option("--category", o.category, "Category to use when the file has several");
  hg->add_option("--I", o.I, "Source object of the base point")->required();
  hg->add_option("--a", o.a, "Target object")->required();
  hg->add_option("--x", o.x, "Base point I -> a")->required();
  hg->add_option("--n", o.n, "Level")->required();
  auto* yo = sub("yoneda", "Yoneda bijection for a presheaf", cmd_yoneda);
  file(yo);
  yo->add_option("--presheaf", o.presheaf, "Presheaf name");
  yo->add_option("--object", o.object, "Only this base object");
  auto* rp = sub("representable", "Representability criterion", cmd_representable);
  file(rp);
  rp->add_option("--presheaf", o.presheaf, "Presheaf name");
  rp->add_option("--object", o.object, "Representing object")->required();
  rp->add_option("--beta", o.beta, "Universal element, an object of the fiber")->required();
  auto* li = sub("limit", "Verify cones or search a strict limit", cmd_limit);
  file(li);
  li->add_option("--cone", o.cone, "Only this cone");
  li->add_option("--diagram", o.diagram, "Search a strict (co)limit of this diagram");
  li->add_option("--kind", o.kind, "limit or colimit")->check(CLI::IsMember({"limit", "colimit"}));
  auto* ad = sub("adjoint", "Verify adjunctions", cmd_adjoint);
  file(ad);
  ad->add_option("--adjunction", o.adjunction, "Only this adjunction");
  auto* du = sub("duality", "Verify concrete dualities", cmd_duality);
  file(du);
  du->add_option("--duality", o.duality, "Only this duality");
  auto* sp = sub("spencer", "Spencer cohomology and involutivity of a symbol", cmd_spencer);
  file(sp, "Symbol JSON file");
  sp->add_option("--rmax", o.rmax, "Highest prolongation checked")->capture_default_str();
  auto* jd = sub("jetdiff", "Diff_s / Jet^s duality for modules over a finite algebra", cmd_jetdiff);
  file(jd, "Algebra JSON file");
  jd->add_option("--s", o.s, "Order")->capture_default_str();
  jd->add_option("--module", o.module, "Only this module");
  for (auto [name, help, fn] : std::initializer_list<std::tuple<const char*, const char*, void (*)(const Options&, Context&)>>{
           {"truncate", "n-truncation of a category", cmd_truncate},
           {"opposite", "Opposite category", cmd_opposite}}) {
    auto* s = sub(name, help, fn);
    file(s);
    s->add_option("--category", o.category, "Category to use when the file has several");
    s->add_option("--out", o.out, "Also write the result as a presentation file");
    if (std::string(name) == "truncate") s->add_option("--n", o.n, "Degree")->required();
  }
  auto* pr = sub("print", "Print a presentation in canonical form", cmd_print);
  file(pr);
  auto* ex = sub("export-corpus", "Write the example corpus and its manifest", cmd_export_corpus);
  ex->add_option("dir", o.out, "Output directory")->required();

  std::vector<const char*> argv{"ocat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    result.code = code == 0 ? kPass : kInputError;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    handler(o, ctx);
  } catch (const InputError& e) {
    result.err = std::string("error: ") + e.what() + "\n";
    result.out = error_document(args, e.what());
    return result;
  } catch (const dsl::DslError& e) {
    result.err = std::string("error: ") + e.what() + "\n";
    result.out = error_document(args, e.what());
    return result;
  } catch (const std::exception& e) {
    // Library refusals (bounds, malformed tables, names) are input errors too.
    std::string msg = o.file.empty() ? e.what() : o.file + ": " + e.what();
    result.err = "error: " + msg + "\n";
    result.out = error_document(args, msg);
    return result;
  }
  if (command == "print") {
    result.code = kPass;
    result.out = ctx.text;
    return result;
  }
  result.code = ctx.doc.passed() ? kPass : kNegative;
  result.out = dump(document_to_json(ctx.doc));
  result.err = summary(command, ctx.doc);
  return result;
}

}  // namespace ocat::cli

// Python entry points. Reports cross the boundary as JSON text and are decoded
// by the package wrapper.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "ocat/dsl.hpp"
#include "ocat/jetdiff.hpp"
#include "ocat/report_json.hpp"
#include "ocat/spencer.hpp"

namespace py = pybind11;
using namespace ocat;

namespace {

dsl::Workspace load(const std::string& text) { return dsl::resolve(dsl::parse(text)); }

const CatRef& pick(const dsl::Workspace& ws, const std::string& name) {
  if (!name.empty()) return ws.category(name);
  for (auto it = ws.order.rbegin(); it != ws.order.rend(); ++it)
    if (ws.categories.count(*it)) return ws.categories.at(*it);
  throw std::invalid_argument("no category declared");
}

SymbolInput symbol(int n, int k, int q, const std::vector<std::vector<std::string>>& rows) {
  SymbolInput s{n, k, q, QMatrix(0, monomial_count(n, q) * static_cast<std::size_t>(k))};
  for (const auto& r : rows) {
    std::vector<Rational> v;
    for (const auto& x : r) v.push_back(parse_rational(x));
    s.relations.append_row(v);
  }
  validate_symbol(s);
  return s;
}

FiniteModuleData free_module(int m, int copies) {
  if (m < 1 || copies < 1) throw std::invalid_argument("m and copies must be positive");
  auto a = std::make_shared<const FiniteAlgebra>(truncated_polynomials(m));
  FiniteModuleData P = regular_module(a);
  FiniteModuleData out = P;
  for (int i = 1; i < copies; ++i) out = direct_sum(out, P);
  return out;
}

}  // namespace

PYBIND11_MODULE(_ocat, m) {
  m.doc() = "Finite omega-categories, Spencer complexes and jet modules";
  m.attr("__version__") = kToolVersion;

  py::register_exception<dsl::DslError>(m, "DslError", PyExc_ValueError);

  m.def(
      "cli",
      [](const std::vector<std::string>& args) {
        auto o = cli::run(args);
        return py::make_tuple(o.code, o.out, o.err);
      },
      py::arg("args"), "Run one ocat command line; returns (exit code, stdout, stderr).");

  m.def(
      "canonical", [](const std::string& text) { return dsl::print(dsl::parse(text)); }, py::arg("text"));

  m.def(
      "check_category",
      [](const std::string& text, const std::string& name, bool weak) {
        auto ws = load(text);
        return dump(report_to_json(validate_category(*pick(ws, name), weak)));
      },
      py::arg("text"), py::arg("name") = "", py::arg("weak") = false);

  m.def(
      "pair_degree",
      [](const std::string& text, const std::string& x, const std::string& y, const std::string& name) {
        auto ws = load(text);
        const auto& C = *pick(ws, name);
        return pair_degree(C, C.at(x), C.at(y));
      },
      py::arg("text"), py::arg("x"), py::arg("y"), py::arg("name") = "");

  m.def(
      "classify",
      [](const std::string& text, const std::string& cell, const std::string& name) {
        auto ws = load(text);
        const auto& C = *pick(ws, name);
        auto c = classify_arrow(C, C.at(cell));
        py::dict d;
        d["monic"] = c.monic;
        d["epic"] = c.epic;
        d["equivalence"] = c.equivalence;
        return d;
      },
      py::arg("text"), py::arg("cell"), py::arg("name") = "");

  m.def(
      "spencer_cohomology",
      [](int n, int k, int q, const std::vector<std::vector<std::string>>& rows, int r) {
        return cohomology_dims(symbol(n, k, q, rows), r);
      },
      py::arg("n"), py::arg("k"), py::arg("q"), py::arg("relations"), py::arg("r"));

  m.def(
      "check_involutive",
      [](int n, int k, int q, const std::vector<std::vector<std::string>>& rows, int r_max) {
        return dump(report_to_json(check_involutive(symbol(n, k, q, rows), r_max)));
      },
      py::arg("n"), py::arg("k"), py::arg("q"), py::arg("relations"), py::arg("r_max") = 4);

  m.def(
      "diff_dim", [](int m_, int copies, int s) { auto P = free_module(m_, copies);
        return diff_space(P, regular_module(P.algebra), s).dim(); },
      py::arg("m"), py::arg("copies"), py::arg("s"), "dim Diff_s(A^copies, A) for A = Q[x]/(x^m).");

  m.def(
      "jet_dim", [](int m_, int copies, int s) { return jet_module(free_module(m_, copies), s).module.dim; },
      py::arg("m"), py::arg("copies"), py::arg("s"));

  m.def(
      "vinogradov",
      [](int m_, int copies, int s) { return dump(report_to_json(verify_vinogradov_duality(free_module(m_, copies), s))); },
      py::arg("m"), py::arg("copies"), py::arg("s"));
}

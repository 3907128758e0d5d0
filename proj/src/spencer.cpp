#include "ocat/spencer.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ocat {

namespace {

void fill_monomials(int n, int d, MultiIndex& cur, std::vector<MultiIndex>& out) {
  const int pos = static_cast<int>(cur.size());
  if (pos == n - 1) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = d; e >= 0; --e) {
    cur.push_back(e);
    fill_monomials(n, d - e, cur, out);
    cur.pop_back();
  }
}

std::map<MultiIndex, std::size_t> monomial_index(int n, int d) {
  std::map<MultiIndex, std::size_t> idx;
  auto ms = monomials(n, d);
  for (std::size_t i = 0; i < ms.size(); ++i) idx[ms[i]] = i;
  return idx;
}

void fill_forms(int n, int l, int from, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == l) {
    out.push_back(cur);
    return;
  }
  for (int i = from; i < n; ++i) {
    cur.push_back(i);
    fill_forms(n, l, i + 1, cur, out);
    cur.pop_back();
  }
}

std::size_t choose(int n, int l) {
  if (l < 0 || l > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= l; ++i) r = r * static_cast<std::size_t>(n - l + i) / static_cast<std::size_t>(i);
  return r;
}

// g ⊗ Λˡ inside S ⊗ V ⊗ Λˡ.
Subspace tensor_forms(const Subspace& g, std::size_t forms) {
  QMatrix rows(0, g.ambient() * forms);
  for (std::size_t b = 0; b < g.dim(); ++b)
    for (std::size_t f = 0; f < forms; ++f) {
      std::vector<Rational> v(g.ambient() * forms);
      for (std::size_t c = 0; c < g.ambient(); ++c) v[c * forms + f] = g.basis()(b, c);
      rows.append_row(v);
    }
  return Subspace::span(rows);
}

bool contraction_closed(const ProlongationTower& t, int r) {
  const auto& s = t.symbol;
  Subspace lower = t.at(r - 1);
  Subspace g = t.at(r);
  for (int i = 0; i < s.n; ++i) {
    QMatrix d = partial_matrix(s.n, s.k, s.q + r, i);
    for (std::size_t b = 0; b < g.dim(); ++b)
      if (!lower.contains(d.apply(g.basis().row(b)))) return false;
  }
  return true;
}

}  // namespace

std::vector<MultiIndex> monomials(int n, int d) {
  std::vector<MultiIndex> out;
  if (d < 0 || n <= 0) return out;
  MultiIndex cur;
  fill_monomials(n, d, cur, out);
  return out;
}

std::size_t monomial_count(int n, int d) {
  if (d < 0 || n <= 0) return 0;
  return choose(n + d - 1, n - 1);
}

std::string monomial_label(const MultiIndex& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (a[i] > 1) s += "^" + std::to_string(a[i]);
  }
  return s.empty() ? "1" : s;
}

std::vector<std::vector<int>> form_basis(int n, int l) {
  std::vector<std::vector<int>> out;
  if (l < 0 || l > n) return out;
  std::vector<int> cur;
  fill_forms(n, l, 0, cur, out);
  return out;
}

void validate_symbol(const SymbolInput& sym) {
  if (sym.n < 1 || sym.k < 1 || sym.q < 0) throw std::invalid_argument("symbol needs n >= 1, k >= 1, q >= 0");
  if (sym.relations.rows() > 0 && sym.relations.cols() != sym.ambient())
    throw std::invalid_argument("relation rows have " + std::to_string(sym.relations.cols()) + " entries, expected " +
                                std::to_string(sym.ambient()));
}

SymbolInput full_symbol(int n, int k, int q) {
  SymbolInput s{n, k, q, {}};
  s.relations = QMatrix(0, s.ambient());
  return s;
}

SymbolInput zero_symbol(int n, int k, int q) {
  SymbolInput s{n, k, q, {}};
  s.relations = QMatrix::identity(s.ambient());
  return s;
}

SymbolInput monomial_symbol(int n, int q, const std::vector<MultiIndex>& killed) {
  SymbolInput s{n, 1, q, {}};
  s.relations = QMatrix(0, s.ambient());
  auto idx = monomial_index(n, q);
  for (const auto& a : killed) {
    auto it = idx.find(a);
    if (it == idx.end()) throw std::invalid_argument("monomial " + monomial_label(a) + " has the wrong degree");
    std::vector<Rational> row(s.ambient());
    row[it->second] = 1;
    s.relations.append_row(row);
  }
  return s;
}

QMatrix partial_matrix(int n, int k, int d, int i) {
  auto src = monomials(n, d);
  auto tgt = monomial_index(n, d - 1);
  const auto K = static_cast<std::size_t>(k);
  QMatrix m(monomial_count(n, d - 1) * K, src.size() * K);
  for (std::size_t a = 0; a < src.size(); ++a) {
    MultiIndex e = src[a];
    if (e[static_cast<std::size_t>(i)] == 0) continue;
    const int mult = e[static_cast<std::size_t>(i)]--;
    const std::size_t t = tgt.at(e);
    for (std::size_t j = 0; j < K; ++j) m(t * K + j, a * K + j) = mult;
  }
  return m;
}

Subspace ProlongationTower::at(int r) const {
  if (r > height()) throw std::out_of_range("prolongation tower stops at " + std::to_string(height()));
  if (r >= 0) return levels[static_cast<std::size_t>(r)];
  return Subspace::full(monomial_count(symbol.n, symbol.q + r) * static_cast<std::size_t>(symbol.k));
}

ProlongationTower prolong_tower(const SymbolInput& sym, int R) {
  validate_symbol(sym);
  ProlongationTower t{sym, {}};
  t.levels.push_back(sym.relations.rows() == 0 ? Subspace::full(sym.ambient()) : kernel(sym.relations));
  for (int r = 1; r <= R; ++r) {
    const std::size_t amb = monomial_count(sym.n, sym.q + r) * static_cast<std::size_t>(sym.k);
    QMatrix ann = t.levels.back().annihilator().basis();
    QMatrix constraints(0, amb);
    if (ann.rows() > 0)
      for (int i = 0; i < sym.n; ++i) constraints.append_rows(ann * partial_matrix(sym.n, sym.k, sym.q + r, i));
    t.levels.push_back(constraints.rows() == 0 ? Subspace::full(amb) : kernel(constraints));
    if (!contraction_closed(t, r)) throw std::logic_error("prolongation left the previous level");
  }
  return t;
}

Subspace prolong(const SymbolInput& sym, int r) {
  if (r < 0) throw std::invalid_argument("prolongation index must be >= 0");
  return prolong_tower(sym, r).at(r);
}

QMatrix koszul_matrix(int n, int k, int d, int l) {
  auto src = monomials(n, d);
  auto tgt = monomial_index(n, d - 1);
  auto fs = form_basis(n, l);
  auto ft = form_basis(n, l + 1);
  std::map<std::vector<int>, std::size_t> fidx;
  for (std::size_t i = 0; i < ft.size(); ++i) fidx[ft[i]] = i;
  const auto K = static_cast<std::size_t>(k);
  QMatrix m(monomial_count(n, d - 1) * K * ft.size(), src.size() * K * fs.size());
  for (std::size_t a = 0; a < src.size(); ++a)
    for (std::size_t f = 0; f < fs.size(); ++f)
      for (int i = 0; i < n; ++i) {
        const auto& form = fs[f];
        if (src[a][static_cast<std::size_t>(i)] == 0) continue;
        if (std::find(form.begin(), form.end(), i) != form.end()) continue;
        // dx_i ∧ dx_I: move dx_i past the smaller indices.
        const auto before = std::count_if(form.begin(), form.end(), [i](int t) { return t < i; });
        std::vector<int> merged = form;
        merged.insert(std::lower_bound(merged.begin(), merged.end(), i), i);
        MultiIndex e = src[a];
        Rational coef = e[static_cast<std::size_t>(i)]--;
        if (before % 2) coef = -coef;
        const std::size_t t = tgt.at(e), g = fidx.at(merged);
        for (std::size_t j = 0; j < K; ++j) m((t * K + j) * ft.size() + g, (a * K + j) * fs.size() + f) += coef;
      }
  return m;
}

QMatrix spencer_delta(const ProlongationTower& tower, int r, int l) {
  const auto& s = tower.symbol;
  if (l < 0 || l >= s.n) throw std::invalid_argument("δ position must satisfy 0 <= l < n");
  Subspace from = tensor_forms(tower.at(r - l), choose(s.n, l));
  Subspace to = tensor_forms(tower.at(r - l - 1), choose(s.n, l + 1));
  QMatrix m = koszul_matrix(s.n, s.k, s.q + r - l, l);
  try {
    return restrict_map(m, from, to);
  } catch (const DimensionError&) {
    throw;
  } catch (const std::logic_error&) {
    throw std::logic_error("δ leaves g^(" + std::to_string(r - l - 1) + ") ⊗ Λ^" + std::to_string(l + 1));
  }
}

std::vector<std::size_t> complex_dims(const ProlongationTower& tower, int r) {
  std::vector<std::size_t> d;
  for (int l = 0; l <= tower.symbol.n; ++l) d.push_back(tower.at(r - l).dim() * choose(tower.symbol.n, l));
  return d;
}

std::vector<std::size_t> cohomology_dims(const ProlongationTower& tower, int r) {
  const int n = tower.symbol.n;
  auto dims = complex_dims(tower, r);
  std::vector<std::size_t> rk(static_cast<std::size_t>(n) + 1, 0);  // rank of δ leaving position l
  for (int l = 0; l < n; ++l) rk[static_cast<std::size_t>(l)] = rank(spencer_delta(tower, r, l));
  std::vector<std::size_t> h;
  for (int l = 0; l <= n; ++l) {
    const auto L = static_cast<std::size_t>(l);
    h.push_back(dims[L] - rk[L] - (l > 0 ? rk[L - 1] : 0));
  }
  return h;
}

std::vector<std::size_t> cohomology_dims(const SymbolInput& sym, int r) {
  if (r < 1) throw std::invalid_argument("cohomology needs r >= 1");
  return cohomology_dims(prolong_tower(sym, r), r);
}

bool delta_squares_to_zero(const ProlongationTower& tower, int r) {
  for (int l = 0; l + 1 < tower.symbol.n; ++l)
    if (!(spencer_delta(tower, r, l + 1) * spencer_delta(tower, r, l)).is_zero()) return false;
  return true;
}

CheckReport check_involutive(const SymbolInput& sym, int r_max, SpencerTable* table) {
  CheckReport rep;
  rep.subject = "symbol n=" + std::to_string(sym.n) + " k=" + std::to_string(sym.k) + " q=" + std::to_string(sym.q);
  try {
    validate_symbol(sym);
    if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
  } catch (const std::invalid_argument& e) {
    rep.fail("spencer.symbol", e.what());
    return rep;
  }
  rep.pass("spencer.symbol");
  ProlongationTower tower = prolong_tower(sym, r_max);
  SpencerTable local;
  SpencerTable& tab = table ? *table : local;
  tab = {};
  for (int r = 0; r <= r_max; ++r) tab.prolongation_dims.push_back(tower.at(r).dim());
  for (int r = 1; r <= r_max; ++r)
    if (!contraction_closed(tower, r)) rep.fail("spencer.contraction", "prolongation not closed under ∂", {std::to_string(r)});
  rep.pass("spencer.contraction");

  bool involutive = true;
  for (int r = 1; r <= r_max; ++r) {
    const std::string rs = std::to_string(r);
    if (!delta_squares_to_zero(tower, r)) rep.fail("spencer.delta_squared", "δ∘δ ≠ 0", {rs});
    auto dims = complex_dims(tower, r);
    auto h = cohomology_dims(tower, r);
    long chi_c = 0, chi_h = 0;
    for (std::size_t l = 0; l < h.size(); ++l) {
      const long sgn = l % 2 ? -1 : 1;
      chi_c += sgn * static_cast<long>(dims[l]);
      chi_h += sgn * static_cast<long>(h[l]);
    }
    if (chi_c != chi_h) rep.fail("spencer.euler", "Euler characteristics differ", {rs});
    for (std::size_t l = 0; l < h.size(); ++l)
      if (h[l] != 0) {
        involutive = false;
        rep.fail("spencer.acyclic", "nonzero δ-cohomology", {"r=" + rs, "l=" + std::to_string(l), "dim " + std::to_string(h[l])});
      }
    tab.dims.push_back(dims);
    tab.cohomology.push_back(h);
  }
  rep.pass("spencer.delta_squared");
  rep.pass("spencer.euler");
  rep.pass("spencer.acyclic");
  rep.fact("involutive", involutive ? "true" : "false");
  rep.fact("r_max", std::to_string(r_max));
  return rep;
}

}  // namespace ocat

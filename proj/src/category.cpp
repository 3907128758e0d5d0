#include "ocat/category.hpp"

#include <algorithm>
#include <set>

#include "ocat/equivalence.hpp"

namespace ocat {

FiniteOmegaCat::FiniteOmegaCat(std::string name, int top_degree) : name_(std::move(name)), top_degree_(top_degree) {
  if (top_degree < 0) throw std::invalid_argument("top degree must be nonnegative");
}

std::uint32_t FiniteOmegaCat::add_cell(std::string name, int degree, std::uint32_t dom, std::uint32_t cod) {
  if (degree < 0) throw StructuralError("cell '" + name + "' has negative degree");
  if (by_name_.count(name)) throw StructuralError("duplicate cell name '" + name + "'");
  auto i = static_cast<std::uint32_t>(cells_.size());
  if (i >= (1u << 28)) throw StructuralError("too many cells");
  by_name_.emplace(name, i);
  cells_.push_back({std::move(name), degree, dom, cod, kNone});
  index_cell(i);
  return i;
}

void FiniteOmegaCat::index_cell(std::uint32_t i) {
  const Stored& s = cells_[i];
  if (static_cast<int>(by_degree_.size()) <= s.degree) by_degree_.resize(s.degree + 1);
  by_degree_[s.degree].push_back(i);
  object_slot_.push_back(s.degree == 0 ? static_cast<std::uint32_t>(by_degree_[0].size() - 1) : kNone);
  if (s.dom != kNone && s.cod != kNone) arrows_[{s.dom, s.cod}].push_back(i);
}

void FiniteOmegaCat::unindex_arrow(std::uint32_t i) {
  const Stored& s = cells_[i];
  auto it = arrows_.find({s.dom, s.cod});
  if (it == arrows_.end()) return;
  auto& v = it->second;
  v.erase(std::remove(v.begin(), v.end(), i), v.end());
  if (v.empty()) arrows_.erase(it);
}

void FiniteOmegaCat::set_boundary(std::uint32_t x, std::uint32_t dom, std::uint32_t cod) {
  unindex_arrow(x);
  cells_.at(x).dom = dom;
  cells_.at(x).cod = cod;
  if (dom != kNone && cod != kNone) {
    auto& v = arrows_[{dom, cod}];
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
  }
}

void FiniteOmegaCat::set_identity(std::uint32_t x, std::uint32_t ex) { cells_.at(x).identity = ex; }

void FiniteOmegaCat::set_compose(int k, std::uint32_t f, std::uint32_t g, std::uint32_t h) {
  if (k < 1 || k > 255) throw StructuralError("composition index out of range");
  if (h == kNone)
    compose_.erase(key(k, f, g));
  else
    compose_[key(k, f, g)] = h;
}

void FiniteOmegaCat::check_references() const {
  auto n = cells_.size();
  auto bad = [&](std::uint32_t r) { return r != kNone && r >= n; };
  for (const auto& s : cells_)
    if (bad(s.dom) || bad(s.cod) || bad(s.identity))
      throw StructuralError("cell '" + s.name + "' references a missing cell");
  for (const auto& [k, h] : compose_) {
    auto f = static_cast<std::uint32_t>((k >> 28) & 0xfffffff), g = static_cast<std::uint32_t>(k & 0xfffffff);
    if (f >= n || g >= n || h >= n) throw StructuralError("composition entry references a missing cell");
  }
}

const std::vector<std::uint32_t>& FiniteOmegaCat::stored_of_degree(int n) const {
  static const std::vector<std::uint32_t> empty;
  if (n < 0 || n >= static_cast<int>(by_degree_.size())) return empty;
  return by_degree_[n];
}

std::vector<ComposeEntry> FiniteOmegaCat::compose_entries() const {
  std::vector<ComposeEntry> out;
  out.reserve(compose_.size());
  for (const auto& [k, h] : compose_)
    out.push_back({static_cast<int>(k >> 56), static_cast<std::uint32_t>((k >> 28) & 0xfffffff),
                   static_cast<std::uint32_t>(k & 0xfffffff), h});
  std::sort(out.begin(), out.end(), [](const ComposeEntry& a, const ComposeEntry& b) {
    return std::tie(a.k, a.f, a.g) < std::tie(b.k, b.f, b.g);
  });
  return out;
}

std::optional<std::uint32_t> FiniteOmegaCat::raw_compose(int k, std::uint32_t f, std::uint32_t g) const {
  if (k < 1 || k > 255 || f >= cells_.size() || g >= cells_.size()) return std::nullopt;
  auto it = compose_.find(key(k, f, g));
  if (it == compose_.end()) return std::nullopt;
  return it->second;
}

std::optional<Cell> FiniteOmegaCat::find(std::string_view name) const {
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) return Cell{it->second, 0};
  // Formal identities: e(x) and e^m(x).
  if (name.size() > 3 && name.front() == 'e' && name.back() == ')') {
    int times = 1;
    std::size_t open = 1;
    if (name[1] == '^') {
      open = name.find('(');
      if (open == std::string_view::npos) return std::nullopt;
      try {
        times = std::stoi(std::string(name.substr(2, open - 2)));
      } catch (...) {
        return std::nullopt;
      }
    }
    if (open >= name.size() || name[open] != '(' || times < 1) return std::nullopt;
    auto inner = find(name.substr(open + 1, name.size() - open - 2));
    if (!inner) return std::nullopt;
    Cell x = *inner;
    for (int i = 0; i < times; ++i) {
      auto ex = identity(x);
      if (!ex) return std::nullopt;
      x = *ex;
    }
    return x;
  }
  return std::nullopt;
}

Cell FiniteOmegaCat::at(std::string_view name) const {
  auto c = find(name);
  if (!c) throw StructuralError("unknown cell '" + std::string(name) + "' in category '" + name_ + "'");
  return *c;
}

std::string FiniteOmegaCat::name_of(Cell x) const {
  if (!x.valid() || x.base >= cells_.size()) return "<none>";
  const std::string& base = cells_[x.base].name;
  if (x.lift == 0) return base;
  if (x.lift == 1) return "e(" + base + ")";
  return "e^" + std::to_string(x.lift) + "(" + base + ")";
}

int FiniteOmegaCat::degree(Cell x) const {
  if (!x.valid() || x.base >= cells_.size()) return -1;
  return cells_[x.base].degree + static_cast<int>(x.lift);
}

Cell FiniteOmegaCat::dom(Cell x) const {
  if (!x.valid() || x.base >= cells_.size()) return {};
  if (x.lift > 0) return {x.base, x.lift - 1};
  return {cells_[x.base].dom, 0};
}

Cell FiniteOmegaCat::cod(Cell x) const {
  if (!x.valid() || x.base >= cells_.size()) return {};
  if (x.lift > 0) return {x.base, x.lift - 1};
  return {cells_[x.base].cod, 0};
}

Cell FiniteOmegaCat::d(Cell x, int k) const {
  for (int i = 0; i < k && x.valid(); ++i) x = dom(x);
  return x;
}

Cell FiniteOmegaCat::c(Cell x, int k) const {
  for (int i = 0; i < k && x.valid(); ++i) x = cod(x);
  return x;
}

std::optional<Cell> FiniteOmegaCat::identity(Cell x) const {
  if (!x.valid() || x.base >= cells_.size()) return std::nullopt;
  if (degree(x) >= top_degree_) return Cell{x.base, x.lift + 1};
  auto ex = cells_[x.base].identity;
  if (ex == kNone) return std::nullopt;
  return Cell{ex, 0};
}

Cell FiniteOmegaCat::e(Cell x, int times) const {
  for (int i = 0; i < times; ++i) {
    auto ex = identity(x);
    if (!ex) throw std::logic_error("identity of '" + name_of(x) + "' is missing in '" + name_ + "'");
    x = *ex;
  }
  return x;
}

std::optional<Cell> FiniteOmegaCat::compose(int k, Cell f, Cell g) const {
  if (k < 1 || !f.valid() || !g.valid() || f.base >= cells_.size() || g.base >= cells_.size()) return std::nullopt;
  int deg = degree(f);
  if (deg != degree(g) || k > deg) return std::nullopt;
  if (f.lift == 0 && g.lift == 0) {
    auto r = raw_compose(k, f.base, g.base);
    if (!r) return std::nullopt;
    return Cell{*r, 0};
  }
  if (f.lift != g.lift) return std::nullopt;
  int m = static_cast<int>(f.lift);
  if (k <= m) {
    if (f.base != g.base) return std::nullopt;
    return f;
  }
  auto r = raw_compose(k - m, f.base, g.base);
  if (!r) return std::nullopt;
  return Cell{*r, f.lift};
}

bool FiniteOmegaCat::composable(int k, Cell f, Cell g) const {
  int deg = degree(f);
  if (k < 1 || deg < k || deg != degree(g)) return false;
  Cell a = d(f, k), b = c(g, k);
  return a.valid() && a == b;
}

bool FiniteOmegaCat::is_identity(Cell x) const {
  if (x.lift > 0) return true;
  if (degree(x) < 1) return false;
  auto ex = identity(dom(x));
  return ex && *ex == x;
}

bool FiniteOmegaCat::parallel(Cell x, Cell y) const {
  if (degree(x) != degree(y)) return false;
  if (degree(x) == 0) return true;
  return dom(x) == dom(y) && cod(x) == cod(y);
}

std::vector<Cell> FiniteOmegaCat::cells_of_degree(int n) const {
  std::vector<Cell> out;
  if (n < 0) return out;
  if (n <= top_degree_) {
    for (auto i : stored_of_degree(n)) out.push_back({i, 0});
  } else {
    for (auto i : stored_of_degree(top_degree_)) out.push_back({i, static_cast<std::uint32_t>(n - top_degree_)});
  }
  return out;
}

std::vector<Cell> FiniteOmegaCat::arrows(Cell a, Cell b) const {
  std::vector<Cell> out;
  if (!a.valid() || !b.valid()) return out;
  if (degree(a) >= top_degree_) {
    if (a == b) out.push_back(*identity(a));
    return out;
  }
  if (a.lift || b.lift) return out;
  auto it = arrows_.find({a.base, b.base});
  if (it == arrows_.end()) return out;
  for (auto i : it->second) out.push_back({i, 0});
  return out;
}

std::size_t FiniteOmegaCat::object_index(Cell a) const {
  if (!a.valid() || a.lift || a.base >= cells_.size() || object_slot_[a.base] == kNone)
    throw std::invalid_argument("'" + name_of(a) + "' is not an object of '" + name_ + "'");
  return object_slot_[a.base];
}

bool operator==(const FiniteOmegaCat& a, const FiniteOmegaCat& b) {
  if (a.top_degree_ != b.top_degree_ || a.cells_.size() != b.cells_.size()) return false;
  for (std::size_t i = 0; i < a.cells_.size(); ++i) {
    const auto &x = a.cells_[i], &y = b.cells_[i];
    if (x.name != y.name || x.degree != y.degree || x.dom != y.dom || x.cod != y.cod || x.identity != y.identity)
      return false;
  }
  return a.compose_ == b.compose_;
}

// ---------------------------------------------------------------------------

CategoryBuilder::CategoryBuilder(std::string name, int top_degree) : cat_(std::move(name), top_degree) {}

std::uint32_t CategoryBuilder::id(const std::string& name) const {
  auto c = cat_.find(name);
  if (!c || c->lift) throw StructuralError("unknown cell '" + name + "'");
  return c->base;
}

CategoryBuilder& CategoryBuilder::cell(const std::string& name, int degree) {
  cat_.add_cell(name, degree);
  return *this;
}

CategoryBuilder& CategoryBuilder::cell(const std::string& name, int degree, const std::string& dom,
                                       const std::string& cod) {
  cat_.add_cell(name, degree, id(dom), id(cod));
  return *this;
}

CategoryBuilder& CategoryBuilder::identity(const std::string& x, const std::string& ex) {
  cat_.set_identity(id(x), id(ex));
  return *this;
}

CategoryBuilder& CategoryBuilder::compose(int k, const std::string& f, const std::string& g, const std::string& h) {
  cat_.set_compose(k, id(f), id(g), id(h));
  return *this;
}

CategoryBuilder& CategoryBuilder::strict(bool s) {
  cat_.set_declared_strict(s);
  return *this;
}

CategoryBuilder& CategoryBuilder::auto_identities() {
  for (int deg = 0; deg < cat_.top_degree(); ++deg) {
    auto layer = cat_.stored_of_degree(deg);  // copy: add_cell grows the index
    for (auto x : layer) {
      if (cat_.stored(x).identity != kNone) continue;
      auto ex = cat_.add_cell("e(" + cat_.stored(x).name + ")", deg + 1, x, x);
      cat_.set_identity(x, ex);
    }
  }
  return *this;
}

CategoryBuilder& CategoryBuilder::derive_identity_composites() {
  ocat::derive_identity_composites(cat_);
  return *this;
}

FiniteOmegaCat CategoryBuilder::build() const {
  cat_.check_references();
  return cat_;
}

void derive_identity_composites(FiniteOmegaCat& cat) {
  bool changed = true;
  auto fill = [&](int k, Cell f, Cell g, Cell h) {
    if (f.lift || g.lift || h.lift) return;
    if (cat.raw_compose(k, f.base, g.base)) return;
    cat.set_compose(k, f.base, g.base, h.base);
    changed = true;
  };
  while (changed) {
    changed = false;
    for (std::uint32_t i = 0; i < cat.size(); ++i) {
      Cell f{i, 0};
      int deg = cat.degree(f);
      for (int k = 1; k <= deg; ++k) {
        Cell left = cat.c(f, k), right = cat.d(f, k);
        bool ok = left.valid() && right.valid();
        for (int j = 0; j < k && ok; ++j) {
          auto l = cat.identity(left), r = cat.identity(right);
          if (!l || !r) ok = false;
          else {
            left = *l;
            right = *r;
          }
        }
        if (!ok) continue;
        fill(k, left, f, f);
        fill(k, f, right, f);
      }
    }
    for (const auto& en : cat.compose_entries()) {
      Cell h{en.result, 0};
      if (cat.degree(h) >= cat.top_degree()) continue;
      auto ef = cat.identity({en.f, 0}), eg = cat.identity({en.g, 0}), eh = cat.identity(h);
      if (ef && eg && eh) fill(en.k + 1, *ef, *eg, *eh);
    }
  }
}

// ---------------------------------------------------------------------------

FiniteOmegaCat hom_set(const FiniteOmegaCat& cat, Cell a, Cell b, std::vector<std::uint32_t>* remap_out) {
  int m = cat.degree(a);
  if (m < 0 || m != cat.degree(b)) throw std::invalid_argument("hom_set: boundary cells must have equal degree");
  std::string nm = cat.name() + "(" + cat.name_of(a) + "," + cat.name_of(b) + ")";
  int top = cat.top_degree();
  if (remap_out) remap_out->assign(cat.size(), kNone);
  if (m >= top) {
    FiniteOmegaCat out(nm, 0);
    if (a == b) out.add_cell(cat.name_of(*cat.identity(a)), 0);
    return out;
  }
  FiniteOmegaCat out(nm, top - m - 1);
  out.set_declared_strict(cat.declared_strict());
  std::vector<std::uint32_t> remap(cat.size(), kNone);
  for (int deg = m + 1; deg <= top; ++deg) {
    for (auto i : cat.stored_of_degree(deg)) {
      Cell f{i, 0};
      int k = deg - m;
      if (cat.d(f, k) != a || cat.c(f, k) != b) continue;
      const auto& s = cat.stored(i);
      std::uint32_t dom = kNone, cod = kNone;
      if (deg > m + 1) {
        dom = s.dom == kNone ? kNone : remap[s.dom];
        cod = s.cod == kNone ? kNone : remap[s.cod];
      }
      remap[i] = out.add_cell(s.name, deg - m - 1, dom, cod);
    }
  }
  for (std::uint32_t i = 0; i < cat.size(); ++i) {
    if (remap[i] == kNone) continue;
    auto ex = cat.stored(i).identity;
    if (ex != kNone && remap[ex] != kNone && cat.stored(i).degree < top) out.set_identity(remap[i], remap[ex]);
  }
  for (const auto& en : cat.compose_entries()) {
    if (remap[en.f] == kNone || remap[en.g] == kNone || remap[en.result] == kNone) continue;
    int hom_deg = cat.stored(en.f).degree - m - 1;
    if (en.k > hom_deg) continue;
    out.set_compose(en.k, remap[en.f], remap[en.g], remap[en.result]);
  }
  if (remap_out) *remap_out = std::move(remap);
  return out;
}

Cell to_hom_cell(const FiniteOmegaCat& cat, Cell a, Cell b, const std::vector<std::uint32_t>& remap, Cell x) {
  int m = cat.degree(a);
  if (!x.valid() || cat.degree(x) <= m) return {};
  if (m >= cat.top_degree()) {
    // Only formal identities e^j(a), j >= 1, when a = b.
    if (a != b || x.base != a.base || x.lift <= a.lift) return {};
    return {0, x.lift - a.lift - 1};
  }
  if (x.base >= remap.size() || remap[x.base] == kNone) return {};
  return {remap[x.base], x.lift};
}

Cell from_hom_cell(const FiniteOmegaCat& cat, Cell a, Cell b, const std::vector<std::uint32_t>& remap, Cell h) {
  if (!h.valid()) return {};
  if (cat.degree(a) >= cat.top_degree()) {
    if (a != b || h.base != 0) return {};
    return {a.base, a.lift + h.lift + 1};
  }
  for (std::uint32_t i = 0; i < remap.size(); ++i)
    if (remap[i] == h.base) return {i, h.lift};
  return {};
}

Cell star(const FiniteOmegaCat& cat, Cell g, Cell f) {
  int dg = cat.degree(g), df = cat.degree(f);
  if (dg < 1 || df < 1) throw std::invalid_argument("star: arguments must have degree >= 1");
  int top = std::max(dg, df);
  Cell gp = cat.e(g, top - dg), fp = cat.e(f, top - df);
  if (!cat.composable(top, gp, fp))
    throw std::invalid_argument("star: '" + cat.name_of(g) + "' and '" + cat.name_of(f) + "' are not composable");
  auto r = cat.compose(top, gp, fp);
  if (!r) throw std::logic_error("star: composite table entry missing in '" + cat.name() + "'");
  return *r;
}

FiniteOmegaCat opposite(const FiniteOmegaCat& cat) {
  std::string nm = cat.name();
  if (nm.size() > 3 && nm.compare(nm.size() - 3, 3, "^op") == 0)
    nm.resize(nm.size() - 3);
  else
    nm += "^op";
  FiniteOmegaCat out(nm, cat.top_degree());
  out.set_declared_strict(cat.declared_strict());
  for (std::uint32_t i = 0; i < cat.size(); ++i) {
    const auto& s = cat.stored(i);
    if (s.degree == 1)
      out.add_cell(s.name, s.degree, s.cod, s.dom);
    else
      out.add_cell(s.name, s.degree, s.dom, s.cod);
  }
  for (std::uint32_t i = 0; i < cat.size(); ++i) out.set_identity(i, cat.stored(i).identity);
  for (const auto& en : cat.compose_entries()) {
    if (en.k == cat.stored(en.f).degree)
      out.set_compose(en.k, en.g, en.f, en.result);
    else
      out.set_compose(en.k, en.f, en.g, en.result);
  }
  return out;
}

FiniteOmegaCat truncate(const FiniteOmegaCat& cat, int n) {
  if (n < 0) throw std::invalid_argument("truncate: negative level");
  if (n >= cat.top_degree()) return cat;
  EquivalenceEngine eq(cat);
  const auto& layer = cat.stored_of_degree(n);
  // Class representative: smallest equivalent index. ∼ must be an equivalence
  // relation on the layer for the quotient to exist.
  std::vector<std::uint32_t> rep(cat.size(), kNone);
  for (auto x : layer) {
    for (auto y : layer) {
      if (y > x) break;
      if (eq.equivalent({x, 0}, {y, 0})) {
        rep[x] = y;
        break;
      }
    }
  }
  for (auto x : layer)
    for (auto y : layer) {
      bool same = rep[x] == rep[y];
      if (same != eq.equivalent({x, 0}, {y, 0}))
        throw EquivalenceSearchError("truncate: ∼ is not transitive on degree " + std::to_string(n) + " (cells '" +
                                     cat.name_of({x, 0}) + "', '" + cat.name_of({y, 0}) + "')");
    }
  FiniteOmegaCat out(cat.name() + "^(" + std::to_string(n) + ")", n);
  out.set_declared_strict(cat.declared_strict());
  std::vector<std::uint32_t> remap(cat.size(), kNone);
  for (std::uint32_t i = 0; i < cat.size(); ++i) {
    const auto& s = cat.stored(i);
    if (s.degree > n || (s.degree == n && rep[i] != i)) continue;
    remap[i] = out.add_cell(s.name, s.degree, s.dom == kNone ? kNone : remap[s.dom],
                            s.cod == kNone ? kNone : remap[s.cod]);
  }
  auto image = [&](std::uint32_t i) -> std::uint32_t {
    if (i == kNone) return kNone;
    if (cat.stored(i).degree == n) return remap[rep[i]];
    return remap[i];
  };
  for (std::uint32_t i = 0; i < cat.size(); ++i) {
    if (remap[i] == kNone || cat.stored(i).degree >= n) continue;
    out.set_identity(remap[i], image(cat.stored(i).identity));
  }
  for (const auto& en : cat.compose_entries()) {
    int deg = cat.stored(en.f).degree;
    if (deg > n) continue;
    std::uint32_t f = image(en.f), g = image(en.g), h = image(en.result);
    if (f == kNone || g == kNone || h == kNone) continue;
    if (auto prev = out.raw_compose(en.k, f, g); prev && *prev != h)
      throw EquivalenceSearchError("truncate: composition is not compatible with ∼ at '" + cat.name_of({en.f, 0}) +
                                   "' ∘" + std::to_string(en.k) + " '" + cat.name_of({en.g, 0}) + "'");
    out.set_compose(en.k, f, g, h);
  }
  return out;
}

FiniteOmegaCat raise_top_degree(const FiniteOmegaCat& cat, int new_top) {
  int top = cat.top_degree();
  if (new_top <= top) return cat;
  FiniteOmegaCat out = cat;
  out.set_top_degree(new_top);
  // Formal cell (x, j) for 1 <= j <= new_top - top gets a stored slot.
  std::map<Cell, std::uint32_t> slot;
  auto stored_of = [&](Cell x) -> std::uint32_t { return x.lift == 0 ? x.base : slot.at(x); };
  const auto tops = cat.stored_of_degree(top);
  for (int j = 1; j <= new_top - top; ++j)
    for (auto x : tops) {
      Cell fx{x, static_cast<std::uint32_t>(j)};
      slot[fx] = out.add_cell(cat.name_of(fx), top + j, stored_of(cat.dom(fx)), stored_of(cat.cod(fx)));
      out.set_identity(stored_of({x, static_cast<std::uint32_t>(j - 1)}), slot[fx]);
    }
  for (int j = 1; j <= new_top - top; ++j)
    for (auto x : tops)
      for (auto y : tops) {
        Cell fx{x, static_cast<std::uint32_t>(j)}, fy{y, static_cast<std::uint32_t>(j)};
        for (int k = 1; k <= top + j; ++k) {
          if (!cat.composable(k, fx, fy)) continue;
          if (auto r = cat.compose(k, fx, fy)) out.set_compose(k, slot[fx], slot[fy], stored_of(*r));
        }
      }
  return out;
}

FiniteOmegaCat product(const FiniteOmegaCat& a0, const FiniteOmegaCat& b0) {
  int top = std::max(a0.top_degree(), b0.top_degree());
  const FiniteOmegaCat a = raise_top_degree(a0, top), b = raise_top_degree(b0, top);
  FiniteOmegaCat out(a.name() + "×" + b.name(), top);
  out.set_declared_strict(a.declared_strict() && b.declared_strict());
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> idx;
  auto pair_of = [&](std::uint32_t x, std::uint32_t y) {
    if (x == kNone || y == kNone) return kNone;
    auto it = idx.find({x, y});
    return it == idx.end() ? kNone : it->second;
  };
  for (int deg = 0; deg <= top; ++deg)
    for (auto x : a.stored_of_degree(deg))
      for (auto y : b.stored_of_degree(deg)) {
        const auto &sx = a.stored(x), &sy = b.stored(y);
        idx[{x, y}] = out.add_cell("(" + sx.name + "," + sy.name + ")", deg, pair_of(sx.dom, sy.dom), pair_of(sx.cod, sy.cod));
      }
  for (auto [xy, i] : idx) {
    auto ex = pair_of(a.stored(xy.first).identity, b.stored(xy.second).identity);
    if (ex != kNone) out.set_identity(i, ex);
  }
  auto ea = a.compose_entries(), eb = b.compose_entries();
  for (const auto& p : ea)
    for (const auto& q : eb) {
      if (p.k != q.k || a.stored(p.f).degree != b.stored(q.f).degree) continue;
      out.set_compose(p.k, pair_of(p.f, q.f), pair_of(p.g, q.g), pair_of(p.result, q.result));
    }
  return out;
}

FiniteOmegaCat coproduct(const FiniteOmegaCat& a, const FiniteOmegaCat& b) {
  int top = std::max(a.top_degree(), b.top_degree());
  FiniteOmegaCat out(a.name() + "+" + b.name(), top);
  const FiniteOmegaCat ra = raise_top_degree(a, top), rb = raise_top_degree(b, top);
  out.set_declared_strict(a.declared_strict() && b.declared_strict());
  for (std::uint32_t i = 0; i < ra.size(); ++i) {
    const auto& s = ra.stored(i);
    out.add_cell(s.name, s.degree, s.dom, s.cod);
  }
  auto off = static_cast<std::uint32_t>(ra.size());
  auto shift = [&](std::uint32_t r) { return r == kNone ? kNone : r + off; };
  for (std::uint32_t i = 0; i < rb.size(); ++i) {
    const auto& s = rb.stored(i);
    std::string nm = s.name;
    while (out.find(nm)) nm += "'";
    out.add_cell(nm, s.degree, shift(s.dom), shift(s.cod));
  }
  for (std::uint32_t i = 0; i < ra.size(); ++i) out.set_identity(i, ra.stored(i).identity);
  for (std::uint32_t i = 0; i < rb.size(); ++i) out.set_identity(i + off, shift(rb.stored(i).identity));
  for (const auto& en : ra.compose_entries()) out.set_compose(en.k, en.f, en.g, en.result);
  for (const auto& en : rb.compose_entries()) out.set_compose(en.k, en.f + off, en.g + off, en.result + off);
  return out;
}

}  // namespace ocat

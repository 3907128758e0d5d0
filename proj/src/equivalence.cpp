#include "ocat/equivalence.hpp"

#include <algorithm>
#include <set>

namespace ocat {

const EquivalenceEngine::Entry& EquivalenceEngine::solve(Cell x, Cell y) {
  auto key = std::make_pair(x, y);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Entry en;
  int deg = cat_.degree(x);
  if (deg < 0 || deg != cat_.degree(y)) {
    // not comparable
  } else if (x == y) {
    en.equivalent = true;
    if (deg < cat_.top_degree()) {
      if (auto ex = cat_.identity(x)) en.first_f = en.first_g = en.best_f = en.best_g = *ex;
    }
  } else if (deg < cat_.top_degree()) {
    auto ex = cat_.identity(x), ey = cat_.identity(y);
    if (ex && ey) {
      auto forwards = cat_.arrows(x, y), backwards = cat_.arrows(y, x);
      for (Cell f : forwards)
        for (Cell g : backwards) {
          auto gf = cat_.compose(1, g, f), fg = cat_.compose(1, f, g);
          if (!gf || !fg) continue;
          const Entry& left = solve(*ex, *gf);
          if (!left.equivalent) continue;
          int ld = left.degree;
          const Entry& right = solve(*fg, *ey);
          if (!right.equivalent) continue;
          int rd = right.degree;
          int d = std::max({1, ld > 0 ? ld + 1 : 0, rd > 0 ? rd + 1 : 0});
          if (!en.equivalent) {
            en.equivalent = true;
            en.first_f = en.best_f = f;
            en.first_g = en.best_g = g;
            en.degree = d;
          } else if (d < en.degree) {
            en.best_f = f;
            en.best_g = g;
            en.degree = d;
          }
        }
    }
  }
  return memo_.emplace(key, en).first->second;
}

bool EquivalenceEngine::equivalent(Cell x, Cell y) { return solve(x, y).equivalent; }

EquivalenceWitness EquivalenceEngine::build(Cell x, Cell y, bool minimal) {
  const Entry en = solve(x, y);
  EquivalenceWitness w{x, y, minimal ? en.best_f : en.first_f, minimal ? en.best_g : en.first_g, {}};
  if (!w.forward.valid()) return w;
  auto gf = cat_.compose(1, w.backward, w.forward), fg = cat_.compose(1, w.forward, w.backward);
  auto ex = cat_.identity(x), ey = cat_.identity(y);
  if (gf && fg && ex && ey && solve(*ex, *gf).equivalent && solve(*fg, *ey).equivalent) {
    w.sub.push_back(build(*ex, *gf, minimal));
    w.sub.push_back(build(*fg, *ey, minimal));
  }
  return w;
}

std::optional<EquivalenceWitness> EquivalenceEngine::witness(Cell x, Cell y) {
  if (!solve(x, y).equivalent) return std::nullopt;
  return build(x, y, false);
}

std::optional<std::pair<EquivalenceWitness, int>> EquivalenceEngine::minimal_witness(Cell x, Cell y) {
  const Entry& en = solve(x, y);
  if (!en.equivalent) return std::nullopt;
  int d = en.degree;
  return std::make_pair(build(x, y, true), d);
}

std::optional<int> EquivalenceEngine::pair_degree(Cell x, Cell y) {
  const Entry& en = solve(x, y);
  if (!en.equivalent) return std::nullopt;
  return en.degree;
}

std::vector<Cell> EquivalenceEngine::quasi_inverses(Cell f) {
  std::vector<Cell> out;
  if (cat_.degree(f) < 1) throw std::invalid_argument("quasi_inverse: '" + cat_.name_of(f) + "' is an object");
  Cell a = cat_.dom(f), b = cat_.cod(f);
  auto ea = cat_.identity(a), eb = cat_.identity(b);
  if (!ea || !eb) return out;
  for (Cell g : cat_.arrows(b, a)) {
    auto gf = cat_.compose(1, g, f), fg = cat_.compose(1, f, g);
    if (gf && fg && equivalent(*ea, *gf) && equivalent(*fg, *eb)) out.push_back(g);
  }
  return out;
}

std::optional<Cell> EquivalenceEngine::quasi_inverse(Cell f) {
  if (cat_.degree(f) < 1) throw std::invalid_argument("quasi_inverse: '" + cat_.name_of(f) + "' is an object");
  Cell a = cat_.dom(f), b = cat_.cod(f);
  auto ea = cat_.identity(a), eb = cat_.identity(b);
  if (!ea || !eb) return std::nullopt;
  for (Cell g : cat_.arrows(b, a)) {
    auto gf = cat_.compose(1, g, f), fg = cat_.compose(1, f, g);
    if (gf && fg && equivalent(*ea, *gf) && equivalent(*fg, *eb)) return g;
  }
  return std::nullopt;
}

bool EquivalenceEngine::replay(const EquivalenceWitness& w) {
  int deg = cat_.degree(w.source);
  if (deg < 0 || deg != cat_.degree(w.target)) return false;
  if (w.by_equality()) return w.source == w.target;
  if (cat_.dom(w.forward) != w.source || cat_.cod(w.forward) != w.target) return false;
  if (cat_.dom(w.backward) != w.target || cat_.cod(w.backward) != w.source) return false;
  if (w.sub.empty()) return w.source == w.target && w.forward == w.backward && cat_.identity(w.source) == w.forward;
  if (w.sub.size() != 2) return false;
  auto gf = cat_.compose(1, w.backward, w.forward), fg = cat_.compose(1, w.forward, w.backward);
  auto ex = cat_.identity(w.source), ey = cat_.identity(w.target);
  if (!gf || !fg || !ex || !ey) return false;
  if (w.sub[0].source != *ex || w.sub[0].target != *gf) return false;
  if (w.sub[1].source != *fg || w.sub[1].target != *ey) return false;
  return replay(w.sub[0]) && replay(w.sub[1]);
}

std::optional<EquivalenceWitness> are_equivalent(const FiniteOmegaCat& cat, Cell x, Cell y) {
  EquivalenceEngine eng(cat);
  return eng.witness(x, y);
}

std::optional<int> pair_degree(const FiniteOmegaCat& cat, Cell x, Cell y) {
  EquivalenceEngine eng(cat);
  return eng.pair_degree(x, y);
}

int category_degree(const FiniteOmegaCat& cat) {
  EquivalenceEngine eng(cat);
  int best = 0;
  auto objs = cat.objects();
  for (Cell a : objs)
    for (Cell b : objs)
      if (auto d = eng.pair_degree(a, b)) best = std::max(best, *d);
  return best;
}

ArrowClass classify_arrow(EquivalenceEngine& eng, Cell f) {
  const FiniteOmegaCat& cat = eng.category();
  int deg = cat.degree(f);
  if (deg < 1) throw std::invalid_argument("classify: '" + cat.name_of(f) + "' is not an arrow");
  Cell a = cat.dom(f), b = cat.cod(f);
  auto layer = cat.cells_of_degree(deg);
  ArrowClass out;
  out.monic = out.epic = true;
  for (Cell g : layer) {
    if (cat.cod(g) != a) continue;
    for (Cell h : layer) {
      if (cat.cod(h) != a || cat.dom(h) != cat.dom(g)) continue;
      auto fg = cat.compose(1, f, g), fh = cat.compose(1, f, h);
      if (fg && fh && eng.equivalent(*fg, *fh) && !eng.equivalent(g, h)) out.monic = false;
    }
  }
  for (Cell g : layer) {
    if (cat.dom(g) != b) continue;
    for (Cell h : layer) {
      if (cat.dom(h) != b || cat.cod(h) != cat.cod(g)) continue;
      auto gf = cat.compose(1, g, f), hf = cat.compose(1, h, f);
      if (gf && hf && eng.equivalent(*gf, *hf) && !eng.equivalent(g, h)) out.epic = false;
    }
  }
  out.equivalence = eng.is_equivalence_arrow(f);
  return out;
}

ArrowClass classify_arrow(const FiniteOmegaCat& cat, Cell f) {
  EquivalenceEngine eng(cat);
  return classify_arrow(eng, f);
}

std::vector<std::vector<Cell>> equivalence_classes(EquivalenceEngine& eng, const std::vector<Cell>& cells) {
  const FiniteOmegaCat& cat = eng.category();
  std::vector<Cell> sorted = cells;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<Cell>> classes;
  std::vector<bool> used(sorted.size(), false);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (used[i]) continue;
    std::vector<Cell> cls{sorted[i]};
    used[i] = true;
    for (std::size_t j = i + 1; j < sorted.size(); ++j)
      if (!used[j] && eng.equivalent(sorted[i], sorted[j])) {
        cls.push_back(sorted[j]);
        used[j] = true;
      }
    classes.push_back(std::move(cls));
  }
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = 0; j < classes.size(); ++j)
      for (Cell x : classes[i])
        for (Cell y : classes[j])
          if (eng.equivalent(x, y) != (i == j))
            throw EquivalenceSearchError("∼ is not transitive: '" + cat.name_of(x) + "' vs '" + cat.name_of(y) + "'");
  return classes;
}

namespace {

bool identities_strictly_preserved(const FiniteOmegaCat& cat, std::string* where) {
  for (const auto& en : cat.compose_entries()) {
    Cell f{en.f, 0}, g{en.g, 0}, h{en.result, 0};
    if (cat.degree(h) >= cat.top_degree()) continue;
    auto ef = cat.identity(f), eg = cat.identity(g), eh = cat.identity(h);
    if (!ef || !eg || !eh) continue;
    auto lhs = cat.compose(en.k + 1, *ef, *eg);
    if (!lhs || *lhs != *eh) {
      *where = cat.name_of(f) + " ∘" + std::to_string(en.k) + " " + cat.name_of(g);
      return false;
    }
  }
  return true;
}

int class_of(const std::vector<std::vector<Cell>>& classes, Cell x) {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (std::find(classes[i].begin(), classes[i].end(), x) != classes[i].end()) return static_cast<int>(i);
  return -1;
}

}  // namespace

HomotopyGroup homotopy_group(const FiniteOmegaCat& cat, Cell I, Cell a, Cell x, int n) {
  if (n < 0) throw std::invalid_argument("homotopy_group: negative n");
  if (cat.degree(I) != 0 || cat.degree(a) != 0) throw std::invalid_argument("homotopy_group: I and a must be objects");
  if (cat.degree(x) != 1 || cat.dom(x) != I || cat.cod(x) != a)
    throw std::invalid_argument("homotopy_group: base point must be an arrow I → a");
  EquivalenceEngine eng(cat);
  HomotopyGroup out;
  out.n = n;
  out.base_point = x;
  out.report.subject = "pi_" + std::to_string(n) + "^" + cat.name_of(I) + "(" + cat.name_of(a) + "," + cat.name_of(x) + ")";
  if (n == 0) {
    out.carrier = cat.arrows(I, a);
    out.classes = equivalence_classes(eng, out.carrier);
    out.unit_class = class_of(out.classes, x);
    out.report.fact("size", std::to_string(out.carrier.size()));
    out.report.fact("classes", std::to_string(out.classes.size()));
    return out;
  }
  std::string where;
  if (!identities_strictly_preserved(cat, &where))
    throw std::invalid_argument("homotopy_group: horizontal composite does not strictly preserve identities at " + where);
  Cell base = cat.e(x, n - 1);
  for (Cell g : cat.arrows(base, base))
    if (eng.is_equivalence_arrow(g)) out.carrier.push_back(g);
  out.classes = equivalence_classes(eng, out.carrier);
  std::size_t m = out.classes.size();
  auto& rep = out.report;
  out.unit_class = class_of(out.classes, cat.e(base));
  if (out.unit_class < 0) rep.fail("pi.unit", "identity of the base point is not in the carrier");
  out.op.assign(m, std::vector<int>(m, -1));
  rep.pass("pi.closure");
  rep.pass("pi.well_defined");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      int target = -2;
      for (Cell g : out.classes[i])
        for (Cell h : out.classes[j]) {
          auto gh = cat.compose(1, g, h);
          int c = gh ? class_of(out.classes, *gh) : -1;
          if (c < 0) {
            rep.fail("pi.closure", "composite leaves the carrier", {cat.name_of(g), cat.name_of(h)});
            continue;
          }
          if (target == -2) target = c;
          else if (target != c)
            rep.fail("pi.well_defined", "composite class depends on representatives", {cat.name_of(g), cat.name_of(h)});
        }
      out.op[i][j] = target < 0 ? -1 : target;
    }
  rep.pass("pi.associativity");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        int ij = out.op[i][j], jk = out.op[j][k];
        if (ij < 0 || jk < 0) continue;
        if (out.op[ij][k] != out.op[i][jk])
          rep.fail("pi.associativity", "class product is not associative",
                   {cat.name_of(out.classes[i][0]), cat.name_of(out.classes[j][0]), cat.name_of(out.classes[k][0])});
      }
  if (out.unit_class >= 0) {
    rep.pass("pi.unit");
    rep.pass("pi.inverse");
    for (std::size_t i = 0; i < m; ++i) {
      if (out.op[out.unit_class][i] != static_cast<int>(i) || out.op[i][out.unit_class] != static_cast<int>(i))
        rep.fail("pi.unit", "identity class is not neutral", {cat.name_of(out.classes[i][0])});
      bool inv = false;
      for (std::size_t j = 0; j < m; ++j)
        if (out.op[i][j] == out.unit_class && out.op[j][i] == out.unit_class) inv = true;
      if (!inv) rep.fail("pi.inverse", "class has no inverse", {cat.name_of(out.classes[i][0])});
    }
  }
  // All composites ∘k, 1 <= k <= n, agree with ∘1 up to ∼.
  rep.pass("pi.composites_agree");
  for (int k = 2; k <= n; ++k)
    for (Cell g : out.carrier)
      for (Cell h : out.carrier) {
        auto v = cat.compose(1, g, h), w = cat.compose(k, g, h);
        if (!v || !w || !eng.equivalent(*v, *w))
          rep.fail("pi.composites_agree", "∘" + std::to_string(k) + " differs from ∘1", {cat.name_of(g), cat.name_of(h)});
      }
  rep.fact("carrier", std::to_string(out.carrier.size()));
  rep.fact("order", std::to_string(m));
  return out;
}

InducedMap induced_map(const FiniteOmegaCat& cat, Cell f, Cell I, Cell x, int n) {
  if (cat.degree(f) != 1) throw std::invalid_argument("induced_map: f must be an arrow between objects");
  if (cat.cod(x) != cat.dom(f)) throw std::invalid_argument("induced_map: f∘x is not defined");
  auto y = cat.compose(1, f, x);
  if (!y) throw std::invalid_argument("induced_map: f∘x is not defined");
  HomotopyGroup src = homotopy_group(cat, I, cat.dom(f), x, n);
  HomotopyGroup dst = homotopy_group(cat, I, cat.cod(f), *y, n);
  InducedMap out;
  auto& rep = out.report;
  rep.subject = "pi_" + std::to_string(n) + "(" + cat.name_of(f) + ")";
  rep.pass("induced.into_carrier");
  rep.pass("induced.well_defined");
  out.class_map.assign(src.classes.size(), -1);
  for (std::size_t i = 0; i < src.classes.size(); ++i)
    for (Cell g : src.classes[i]) {
      std::optional<Cell> img;
      if (n == 0)
        img = cat.compose(1, f, g);
      else
        img = star(cat, f, g);
      int c = img ? class_of(dst.classes, *img) : -1;
      if (c < 0) {
        rep.fail("induced.into_carrier", "image leaves the target carrier", {cat.name_of(g)});
        continue;
      }
      if (out.class_map[i] == -1) out.class_map[i] = c;
      else if (out.class_map[i] != c) rep.fail("induced.well_defined", "image class depends on representative", {cat.name_of(g)});
    }
  if (n > 0) {
    rep.pass("induced.homomorphism");
    for (std::size_t i = 0; i < src.classes.size(); ++i)
      for (std::size_t j = 0; j < src.classes.size(); ++j) {
        int ij = src.op[i][j];
        if (ij < 0 || out.class_map[i] < 0 || out.class_map[j] < 0 || out.class_map[ij] < 0) continue;
        if (dst.op[out.class_map[i]][out.class_map[j]] != out.class_map[ij])
          rep.fail("induced.homomorphism", "class product not preserved",
                   {cat.name_of(src.classes[i][0]), cat.name_of(src.classes[j][0])});
      }
  } else if (out.class_map.size() && src.unit_class >= 0 && out.class_map[src.unit_class] != dst.unit_class) {
    rep.fail("induced.pointed", "base point not preserved");
  } else {
    rep.pass("induced.pointed");
  }
  return out;
}

FiniteOmegaCat equivalence_core(const FiniteOmegaCat& cat, int k) {
  EquivalenceEngine eng(cat);
  FiniteOmegaCat out(cat.name() + "_" + std::to_string(k) + "~", cat.top_degree());
  out.set_declared_strict(cat.declared_strict());
  std::vector<std::uint32_t> remap(cat.size(), kNone);
  for (int deg = 0; deg <= cat.top_degree(); ++deg)
    for (auto i : cat.stored_of_degree(deg)) {
      const auto& s = cat.stored(i);
      if (deg > k) {
        if (remap[s.dom] == kNone || remap[s.cod] == kNone) continue;
        if (!eng.is_equivalence_arrow({i, 0})) continue;
      }
      std::uint32_t dom = s.dom == kNone ? kNone : remap[s.dom], cod = s.cod == kNone ? kNone : remap[s.cod];
      remap[i] = out.add_cell(s.name, deg, dom, cod);
    }
  for (std::uint32_t i = 0; i < cat.size(); ++i) {
    auto ex = cat.stored(i).identity;
    if (remap[i] != kNone && ex != kNone && remap[ex] != kNone) out.set_identity(remap[i], remap[ex]);
  }
  for (const auto& en : cat.compose_entries())
    if (remap[en.f] != kNone && remap[en.g] != kNone && remap[en.result] != kNone)
      out.set_compose(en.k, remap[en.f], remap[en.g], remap[en.result]);
  return out;
}

}  // namespace ocat

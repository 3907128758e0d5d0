#include "ocat/functor.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>

namespace ocat {

std::size_t enumeration_bound() {
  if (const char* env = std::getenv("OCAT_MAX_CELLS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return 12;
}

Cell FunctorData::apply(Cell x) const {
  if (!x.valid()) return {};
  if (x.base >= map.size()) throw std::out_of_range("functor '" + name + "' has no image for cell #" + std::to_string(x.base));
  Cell y = map[x.base];
  return x.lift ? target->e(y, static_cast<int>(x.lift)) : y;
}

const CatRef& ModificationData::source() const { return cat_source(dom); }
const CatRef& ModificationData::target() const { return cat_target(dom); }

Cell ModificationData::at(Cell object) const {
  std::size_t i = source()->object_index(object);
  if (i >= components.size()) throw std::out_of_range("modification '" + name + "' lacks a component");
  return components[i];
}

int CatCellData::degree() const {
  switch (value.index()) {
    case 0: return 0;
    case 1: return 1;
    default: return modification().level + 2;
  }
}

std::string CatCellData::name() const {
  switch (value.index()) {
    case 0: return category()->name();
    case 1: return functor().name;
    default: return modification().name;
  }
}

CatCell make_cell(CatRef c) { return std::make_shared<const CatCellData>(CatCellData{std::move(c)}); }
CatCell make_cell(FunctorData f) { return std::make_shared<const CatCellData>(CatCellData{std::move(f)}); }
CatCell make_cell(ModificationData m) { return std::make_shared<const CatCellData>(CatCellData{std::move(m)}); }

const CatRef& cat_source(const CatCell& x) {
  if (x->is_functor()) return x->functor().source;
  if (x->is_modification()) return x->modification().source();
  throw std::invalid_argument("a category has no source");
}

const CatRef& cat_target(const CatCell& x) {
  if (x->is_functor()) return x->functor().target;
  if (x->is_modification()) return x->modification().target();
  throw std::invalid_argument("a category has no target");
}

CatCell cat_dom(const CatCell& x) {
  if (x->is_category()) return nullptr;
  if (x->is_functor()) return make_cell(x->functor().source);
  return x->modification().dom;
}

CatCell cat_cod(const CatCell& x) {
  if (x->is_category()) return nullptr;
  if (x->is_functor()) return make_cell(x->functor().target);
  return x->modification().cod;
}

CatCell cat_d(const CatCell& x, int k) {
  CatCell y = x;
  for (int i = 0; i < k && y; ++i) y = cat_dom(y);
  return y;
}

CatCell cat_c(const CatCell& x, int k) {
  CatCell y = x;
  for (int i = 0; i < k && y; ++i) y = cat_cod(y);
  return y;
}

FunctorData identity_functor(const CatRef& cat) {
  FunctorData f{"id_" + cat->name(), cat, cat, {}};
  f.map.reserve(cat->size());
  for (std::uint32_t i = 0; i < cat->size(); ++i) f.map.push_back({i, 0});
  return f;
}

FunctorData compose_functors(const FunctorData& g, const FunctorData& f) {
  if (f.target != g.source) throw std::invalid_argument("functors '" + g.name + "' and '" + f.name + "' do not compose");
  FunctorData h{g.name + "∘" + f.name, f.source, g.target, {}};
  h.map.reserve(f.map.size());
  for (Cell x : f.map) h.map.push_back(g.apply(x));
  return h;
}

CatCell cat_identity(const CatCell& x) {
  if (x->is_category()) return make_cell(identity_functor(x->category()));
  ModificationData m;
  m.name = "e(" + x->name() + ")";
  m.dom = m.cod = x;
  const CatRef& src = cat_source(x);
  const CatRef& tgt = cat_target(x);
  for (Cell a : src->objects()) m.components.push_back(tgt->e(evaluate_at(x, a)));
  m.level = x->is_functor() ? 0 : x->modification().level + 1;
  return make_cell(std::move(m));
}

CatCell cat_e(const CatCell& x, int times) {
  CatCell y = x;
  for (int i = 0; i < times; ++i) y = cat_identity(y);
  return y;
}

Cell evaluate_at(const CatCell& x, Cell cell) {
  if (x->is_functor()) return x->functor().apply(cell);
  if (x->is_modification()) return x->modification().at(cell);
  throw std::invalid_argument("cannot evaluate a category");
}

bool same_cell(const CatCell& a, const CatCell& b) {
  if (a == b) return true;
  if (!a || !b || a->value.index() != b->value.index()) return false;
  if (a->is_category()) return a->category() == b->category();
  if (a->is_functor()) {
    const auto &f = a->functor(), &g = b->functor();
    return f.source == g.source && f.target == g.target && f.map == g.map;
  }
  const auto &m = a->modification(), &n = b->modification();
  return m.level == n.level && m.components == n.components && same_cell(m.dom, n.dom) && same_cell(m.cod, n.cod);
}

bool composable(int k, const CatCell& a, const CatCell& b) {
  int deg = a->degree();
  if (k < 1 || deg < k || deg != b->degree()) return false;
  return same_cell(cat_d(a, k), cat_c(b, k));
}

std::optional<CatCell> cat_compose(int k, const CatCell& a, const CatCell& b) {
  if (!composable(k, a, b)) return std::nullopt;
  int deg = a->degree();
  if (deg == 1) return make_cell(compose_functors(a->functor(), b->functor()));
  const auto &A = a->modification(), &B = b->modification();
  ModificationData out;
  out.level = A.level;
  out.name = A.name + "∘" + std::to_string(k) + B.name;
  const CatRef& src = B.source();
  const CatRef& tgt = A.target();
  auto require = [&](std::optional<Cell> r, Cell x, Cell y, int j) {
    if (!r)
      throw std::logic_error("∞-CAT composite needs '" + tgt->name_of(x) + "' ∘" + std::to_string(j) + " '" +
                             tgt->name_of(y) + "' which is missing in '" + tgt->name() + "'");
    return *r;
  };
  if (k < deg) {
    for (Cell obj : src->objects()) {
      Cell x = A.at(obj), y = B.at(obj);
      out.components.push_back(require(tgt->compose(k, x, y), x, y, k));
    }
    if (k == 1) {
      out.dom = B.dom;
      out.cod = A.cod;
    } else {
      out.dom = *cat_compose(k - 1, A.dom, B.dom);
      out.cod = *cat_compose(k - 1, A.cod, B.cod);
    }
  } else {
    // Along categories: a ↦ A(F'(a)) ∘(n+1) G(B(a)).
    const FunctorData G = cat_d(a, deg - 1)->functor();
    const FunctorData Fp = cat_c(b, deg - 1)->functor();
    for (Cell obj : src->objects()) {
      Cell x = A.at(Fp.apply(obj)), y = G.apply(B.at(obj));
      out.components.push_back(require(tgt->compose(deg - 1, x, y), x, y, deg - 1));
    }
    out.dom = *cat_compose(deg - 1, A.dom, B.dom);
    out.cod = *cat_compose(deg - 1, A.cod, B.cod);
  }
  return make_cell(std::move(out));
}

std::string cat_key(const CatCell& x) {
  auto cells = [](const std::vector<Cell>& v) {
    std::string s;
    for (Cell c : v) s += std::to_string(c.base) + "." + std::to_string(c.lift) + ",";
    return s;
  };
  if (x->is_category()) return "C" + std::to_string(reinterpret_cast<std::uintptr_t>(x->category().get()));
  if (x->is_functor()) {
    const auto& f = x->functor();
    return "F(" + cat_key(make_cell(f.source)) + ">" + cat_key(make_cell(f.target)) + ":" + cells(f.map) + ")";
  }
  const auto& m = x->modification();
  return "M" + std::to_string(m.level) + "(" + cat_key(m.dom) + "|" + cat_key(m.cod) + ":" + cells(m.components) + ")";
}

// ---------------------------------------------------------------------------

CheckReport check_functor(const FunctorData& F, Strictness mode) {
  CheckReport rep;
  rep.subject = F.name;
  rep.fact("mode", mode == Strictness::strict ? "strict" : "weak");
  const FiniteOmegaCat& S = *F.source;
  const FiniteOmegaCat& T = *F.target;
  static const char* ids[] = {"functor.total",    "functor.grading",        "functor.boundary",
                              "functor.identity", "functor.compose",        "lemma1_4.e2_implies_e",
                              "lemma1_4.sim_implies_compose"};
  for (auto id : ids) rep.pass(id);
  auto nm = [&](std::uint32_t i) { return S.stored(i).name; };
  if (F.map.size() != S.size()) {
    rep.fail("functor.total", "cell map has " + std::to_string(F.map.size()) + " entries for " +
                                  std::to_string(S.size()) + " cells");
  }
  for (std::uint32_t i = 0; i < std::min<std::size_t>(F.map.size(), S.size()); ++i)
    if (!F.map[i].valid() || F.map[i].base >= T.size()) rep.fail("functor.total", "image missing", {nm(i)});
  if (rep.status("functor.total") == Status::fail) {
    for (std::size_t i = 1; i < std::size(ids); ++i) rep.skip(ids[i]);
    return rep;
  }
  EquivalenceEngine eng(T);
  auto same = [&](Cell a, Cell b) { return mode == Strictness::strict ? a == b : eng.equivalent(a, b); };
  for (std::uint32_t i = 0; i < S.size(); ++i) {
    Cell x{i, 0};
    Cell fx = F.apply(x);
    if (T.degree(fx) != S.degree(x)) {
      rep.fail("functor.grading", "degree not preserved", {nm(i), T.name_of(fx)});
      continue;
    }
    if (S.degree(x) > 0 && (F.apply(S.dom(x)) != T.dom(fx) || F.apply(S.cod(x)) != T.cod(fx)))
      rep.fail("functor.boundary", "d or c not preserved", {nm(i), T.name_of(fx)});
  }
  bool strict_identity = true, strict_compose = true;
  for (std::uint32_t i = 0; i < S.size(); ++i) {
    Cell x{i, 0};
    if (S.degree(x) >= S.top_degree()) continue;
    auto ex = S.identity(x);
    auto efx = T.identity(F.apply(x));
    if (!ex) continue;
    if (!efx) {
      rep.fail("functor.identity", "target lacks e F(x)", {nm(i)});
      continue;
    }
    Cell fex = F.apply(*ex);
    if (fex != *efx) strict_identity = false;
    if (!same(fex, *efx)) rep.fail("functor.identity", "F(e x) vs e F(x)", {nm(i), T.name_of(fex)});
    // e²F(x) ∼ F(e²x) forces e F(x) = F(e x).
    try {
      Cell e2 = T.e(F.apply(x), 2);
      Cell fe2 = F.apply(S.e(x, 2));
      if (T.degree(e2) == T.degree(fe2) && eng.equivalent(e2, fe2) && fex != *efx)
        rep.fail("lemma1_4.e2_implies_e", "e²F(x) ∼ F(e²x) but F(e x) != e F(x)", {nm(i)});
    } catch (const std::logic_error&) {
    }
  }
  for (const auto& en : S.compose_entries()) {
    Cell f{en.f, 0}, g{en.g, 0}, h{en.result, 0};
    auto want = T.compose(en.k, F.apply(f), F.apply(g));
    Cell got = F.apply(h);
    std::vector<std::string> w{"k=" + std::to_string(en.k), nm(en.f), nm(en.g)};
    if (!want) {
      rep.fail("functor.compose", "F f ∘k F g undefined", w);
      strict_compose = false;
      continue;
    }
    if (*want != got) strict_compose = false;
    if (!same(got, *want)) rep.fail("functor.compose", "F(f ∘k g) vs F f ∘k F g", w);
  }
  // ∼-preserving functors preserve composites strictly.
  CheckReport pres = check_equiv_preservation(F);
  bool preserves = pres.status("equiv.preserved") == Status::pass;
  rep.fact("preserves_equivalence", preserves ? "true" : "false");
  rep.fact("strict_identities", strict_identity ? "true" : "false");
  rep.fact("strict_composites", strict_compose ? "true" : "false");
  if (preserves && !strict_compose)
    rep.fail("lemma1_4.sim_implies_compose", "functor preserves ∼ yet breaks a composite strictly");
  return rep;
}

CheckReport check_equiv_preservation(const FunctorData& F) {
  CheckReport rep;
  rep.subject = F.name;
  const FiniteOmegaCat& S = *F.source;
  const FiniteOmegaCat& T = *F.target;
  EquivalenceEngine se(S), te(T);
  rep.pass("equiv.preserved");
  rep.pass("equiv.homwise");
  rep.pass("lemma1_3.homwise_implies_global");
  for (int deg = 0; deg < S.top_degree(); ++deg) {
    auto layer = S.cells_of_degree(deg);
    for (Cell x : layer)
      for (Cell y : layer)
        if (x < y && se.equivalent(x, y) && !te.equivalent(F.apply(x), F.apply(y)))
          rep.fail("equiv.preserved", "x ∼ y but F x ≁ F y", {S.name_of(x), S.name_of(y)});
  }
  // Hom-wise: restrictions L(a,b) → L'(F a, F b), computed on the hom-set
  // categories themselves.
  for (Cell a : S.objects())
    for (Cell b : S.objects()) {
      std::vector<std::uint32_t> sr, tr;
      Cell fa = F.apply(a), fb = F.apply(b);
      FiniteOmegaCat H = hom_set(S, a, b, &sr);
      FiniteOmegaCat HT = hom_set(T, fa, fb, &tr);
      EquivalenceEngine he(H), hte(HT);
      for (int deg = 0; deg < H.top_degree(); ++deg) {
        auto layer = H.cells_of_degree(deg);
        for (Cell x : layer)
          for (Cell y : layer) {
            if (!(x < y) || !he.equivalent(x, y)) continue;
            Cell fx = to_hom_cell(T, fa, fb, tr, F.apply(from_hom_cell(S, a, b, sr, x)));
            Cell fy = to_hom_cell(T, fa, fb, tr, F.apply(from_hom_cell(S, a, b, sr, y)));
            if (!fx.valid() || !fy.valid() || !hte.equivalent(fx, fy))
              rep.fail("equiv.homwise", "hom restriction breaks ∼", {S.name_of(a), S.name_of(b), H.name_of(x), H.name_of(y)});
          }
      }
    }
  if (rep.status("equiv.homwise") == Status::pass && rep.status("equiv.preserved") == Status::fail)
    rep.fail("lemma1_3.homwise_implies_global", "hom-wise preservation without global preservation");
  return rep;
}

CheckReport check_modification(const ModificationData& M) {
  CheckReport rep;
  rep.subject = M.name;
  rep.pass("mod.chain");
  rep.pass("mod.components");
  rep.pass("mod.naturality");
  if (!M.dom || !M.cod) {
    rep.fail("mod.chain", "missing boundary");
    rep.skip("mod.components");
    rep.skip("mod.naturality");
    return rep;
  }
  int want_deg = M.level + 1;  // degree of the boundaries in ∞-CAT
  if (M.dom->degree() != want_deg || M.cod->degree() != want_deg)
    rep.fail("mod.chain", "boundary degrees do not match the level");
  else if (M.level == 0) {
    if (M.dom->functor().source != M.cod->functor().source || M.dom->functor().target != M.cod->functor().target)
      rep.fail("mod.chain", "functors are not parallel", {M.dom->name(), M.cod->name()});
  } else if (!same_cell(cat_dom(M.dom), cat_dom(M.cod)) || !same_cell(cat_cod(M.dom), cat_cod(M.cod))) {
    rep.fail("mod.chain", "boundary modifications are not parallel", {M.dom->name(), M.cod->name()});
  }
  if (rep.status("mod.chain") == Status::fail) {
    rep.skip("mod.components");
    rep.skip("mod.naturality");
    return rep;
  }
  const FiniteOmegaCat& S = *M.source();
  const FiniteOmegaCat& T = *M.target();
  auto objs = S.objects();
  if (M.components.size() != objs.size()) {
    rep.fail("mod.components", "component count differs from the object count");
    rep.skip("mod.naturality");
    return rep;
  }
  for (std::size_t i = 0; i < objs.size(); ++i) {
    Cell comp = M.components[i];
    if (T.degree(comp) != M.level + 1 || T.dom(comp) != evaluate_at(M.dom, objs[i]) ||
        T.cod(comp) != evaluate_at(M.cod, objs[i]))
      rep.fail("mod.components", "component has the wrong boundary", {S.name_of(objs[i]), T.name_of(comp)});
  }
  if (rep.status("mod.components") == Status::fail) {
    rep.skip("mod.naturality");
    return rep;
  }
  const FunctorData F = cat_d(M.dom, M.level)->functor();
  const FunctorData G = cat_c(M.cod, M.level)->functor();
  EquivalenceEngine eng(T);
  bool strict = true;
  for (int deg = M.level + 1; deg <= S.top_degree(); ++deg)
    for (Cell f : S.cells_of_degree(deg)) {
      int k = deg - M.level - 1;
      Cell a = S.d(f, deg), b = S.c(f, deg);
      auto lhs = T.compose(deg, T.e(M.at(b), k), F.apply(f));
      auto rhs = T.compose(deg, G.apply(f), T.e(M.at(a), k));
      if (!lhs || !rhs) {
        rep.fail("mod.naturality", "naturality composite undefined", {S.name_of(f)});
        strict = false;
        continue;
      }
      if (*lhs != *rhs) strict = false;
      if (!eng.equivalent(*lhs, *rhs)) rep.fail("mod.naturality", "naturality square fails", {S.name_of(f)});
    }
  rep.fact("strict", strict ? "true" : "false");
  return rep;
}

CheckReport check_invariant(const FunctorData& F, int m, int n) {
  CheckReport rep;
  rep.subject = F.name;
  const FiniteOmegaCat& S = *F.source;
  const FiniteOmegaCat& T = *F.target;
  EquivalenceEngine se(S), te(T);
  int m_actual = 0, n_actual = 0;
  rep.pass("invariant.preserves");
  auto objs = S.objects();
  for (Cell a : objs)
    for (Cell b : objs) {
      auto d = se.pair_degree(a, b);
      if (!d) continue;
      m_actual = std::max(m_actual, *d);
      auto dn = te.pair_degree(F.apply(a), F.apply(b));
      if (!dn) {
        rep.fail("invariant.preserves", "equivalent objects map to inequivalent ones", {S.name_of(a), S.name_of(b)});
        continue;
      }
      n_actual = std::max(n_actual, *dn);
    }
  for (int deg = 1; deg < S.top_degree(); ++deg) {
    auto layer = S.cells_of_degree(deg);
    for (Cell x : layer)
      for (Cell y : layer)
        if (x < y && se.equivalent(x, y) && !te.equivalent(F.apply(x), F.apply(y)))
          rep.fail("invariant.preserves", "equivalent cells map to inequivalent ones", {S.name_of(x), S.name_of(y)});
  }
  rep.fact("m", std::to_string(m_actual));
  rep.fact("n", std::to_string(n_actual));
  if (m_actual != m) rep.fail("invariant.source_degree", "deg(L) = " + std::to_string(m_actual));
  else rep.pass("invariant.source_degree");
  if (n_actual > n) rep.fail("invariant.bound", "image pair of degree " + std::to_string(n_actual));
  else rep.pass("invariant.bound");
  if (n_actual != n) rep.fail("invariant.attained", "largest image degree is " + std::to_string(n_actual));
  else rep.pass("invariant.attained");
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<FunctorData> enumerate_functors(const CatRef& source, const CatRef& target) {
  const FiniteOmegaCat& S = *source;
  const FiniteOmegaCat& T = *target;
  std::size_t bound = enumeration_bound();
  if (S.size() > bound || T.size() > bound)
    throw EnumerationBoundError("functor enumeration refused: " + std::to_string(S.size()) + " and " +
                                std::to_string(T.size()) + " cells exceed the bound " + std::to_string(bound) +
                                " (set OCAT_MAX_CELLS to raise it)");
  std::vector<std::uint32_t> order;
  for (int deg = 0; deg <= S.top_degree(); ++deg)
    for (auto i : S.stored_of_degree(deg)) order.push_back(i);
  // Entries touching each cell, and identity parents.
  auto entries = S.compose_entries();
  std::vector<std::vector<std::size_t>> touching(S.size());
  for (std::size_t j = 0; j < entries.size(); ++j) {
    touching[entries[j].f].push_back(j);
    if (entries[j].g != entries[j].f) touching[entries[j].g].push_back(j);
    if (entries[j].result != entries[j].f && entries[j].result != entries[j].g) touching[entries[j].result].push_back(j);
  }
  std::vector<std::uint32_t> parent(S.size(), kNone);
  for (std::uint32_t i = 0; i < S.size(); ++i)
    if (S.stored(i).identity != kNone) parent[S.stored(i).identity] = i;

  std::vector<Cell> img(S.size());
  std::vector<bool> assigned(S.size(), false);
  std::vector<FunctorData> out;
  std::function<void(std::size_t)> go = [&](std::size_t pos) {
    if (pos == order.size()) {
      if (out.size() >= kMaxFunctors)
        throw EnumerationBoundError("functor enumeration refused: more than " + std::to_string(kMaxFunctors) +
                                    " functors from " + S.name() + " to " + T.name());
      out.push_back({S.name() + "->" + T.name() + "#" + std::to_string(out.size()), source, target, img});
      return;
    }
    std::uint32_t x = order[pos];
    const auto& s = S.stored(x);
    std::vector<Cell> candidates;
    if (parent[x] != kNone && assigned[parent[x]]) {
      auto e = T.identity(img[parent[x]]);
      if (e) candidates.push_back(*e);
    } else {
      for (Cell y : T.cells_of_degree(s.degree)) {
        if (s.degree > 0 && (T.dom(y) != img[s.dom] || T.cod(y) != img[s.cod])) continue;
        candidates.push_back(y);
      }
    }
    for (Cell y : candidates) {
      if (s.degree > 0 && (T.dom(y) != img[s.dom] || T.cod(y) != img[s.cod])) continue;
      img[x] = y;
      assigned[x] = true;
      bool ok = true;
      for (auto j : touching[x]) {
        const auto& en = entries[j];
        if (!assigned[en.f] || !assigned[en.g] || !assigned[en.result]) continue;
        auto r = T.compose(en.k, img[en.f], img[en.g]);
        if (!r || *r != img[en.result]) {
          ok = false;
          break;
        }
      }
      if (ok) go(pos + 1);
      assigned[x] = false;
    }
  };
  go(0);
  return out;
}

std::vector<ModificationData> enumerate_modifications(const CatCell& dom, const CatCell& cod) {
  std::vector<ModificationData> out;
  if (dom->degree() != cod->degree() || dom->degree() < 1) return out;
  int level = dom->degree() - 1;
  if (level == 0) {
    if (dom->functor().source != cod->functor().source || dom->functor().target != cod->functor().target) return out;
  } else if (!same_cell(cat_dom(dom), cat_dom(cod)) || !same_cell(cat_cod(dom), cat_cod(cod))) {
    return out;
  }
  const CatRef& src = cat_source(dom);
  const FiniteOmegaCat& S = *src;
  const FiniteOmegaCat& T = *cat_target(dom);
  const FunctorData F = cat_d(dom, level)->functor();
  const FunctorData G = cat_c(cod, level)->functor();
  auto objs = S.objects();
  std::vector<std::vector<Cell>> candidates(objs.size());
  for (std::size_t i = 0; i < objs.size(); ++i)
    candidates[i] = T.arrows(evaluate_at(dom, objs[i]), evaluate_at(cod, objs[i]));
  // Naturality squares checked once both ends are assigned.
  std::vector<std::vector<Cell>> squares(objs.size());
  for (int deg = level + 1; deg <= S.top_degree(); ++deg)
    for (Cell f : S.cells_of_degree(deg)) {
      auto ia = S.object_index(S.d(f, deg)), ib = S.object_index(S.c(f, deg));
      squares[std::max(ia, ib)].push_back(f);
    }
  std::vector<Cell> comp(objs.size());
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == objs.size()) {
      ModificationData m;
      m.level = level;
      m.dom = dom;
      m.cod = cod;
      m.components = comp;
      m.name = dom->name() + "=>" + cod->name() + "#" + std::to_string(out.size());
      out.push_back(std::move(m));
      return;
    }
    for (Cell y : candidates[i]) {
      comp[i] = y;
      bool ok = true;
      for (Cell f : squares[i]) {
        int deg = S.degree(f), k = deg - level - 1;
        Cell a = S.d(f, deg), b = S.c(f, deg);
        Cell ca = comp[S.object_index(a)], cb = comp[S.object_index(b)];
        auto lhs = T.compose(deg, T.e(cb, k), F.apply(f));
        auto rhs = T.compose(deg, G.apply(f), T.e(ca, k));
        if (!lhs || !rhs || *lhs != *rhs) {
          ok = false;
          break;
        }
      }
      if (ok) go(i + 1);
    }
  };
  go(0);
  return out;
}

bool quasiequal_implies_equal(const FunctorData& F, const FunctorData& G) {
  if (F.source != G.source || F.target != G.target) return true;
  EquivalenceEngine eng(*F.target);
  for (std::uint32_t i = 0; i < F.source->size(); ++i) {
    Cell a = F.apply({i, 0}), b = G.apply({i, 0});
    if (F.target->degree(a) != F.target->degree(b) || !eng.equivalent(a, b)) return true;
  }
  return F.map == G.map;
}

}  // namespace ocat

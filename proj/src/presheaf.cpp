#include "ocat/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "ocat/fragment.hpp"

namespace ocat {

namespace {

std::string ptr_key(const void* p) { return std::to_string(reinterpret_cast<std::uintptr_t>(p)); }

// Hom cell of x in base(a, b); recomputes the (deterministic) remap.
Cell hom_cell(const FiniteOmegaCat& base, Cell a, Cell b, Cell x) {
  std::vector<std::uint32_t> remap;
  hom_set(base, a, b, &remap);
  return to_hom_cell(base, a, b, remap, x);
}

bool safe_same(const std::function<std::optional<CatCell>()>& lhs, const std::function<std::optional<CatCell>()>& rhs,
               bool* strict, int depth) {
  try {
    auto l = lhs(), r = rhs();
    if (!l || !r) return false;
    if (strict) *strict = *strict && same_cell(*l, *r);
    return approx(*l, *r, depth);
  } catch (const std::logic_error&) {
    return false;
  }
}

}  // namespace

CatCell CatValuedPresheaf::at(Cell x) const {
  if (!x.valid() || x.base >= base->size()) throw std::out_of_range("presheaf '" + name + "': cell outside the base");
  if (x.lift > 0) return cat_e(at({x.base, 0}), static_cast<int>(x.lift));
  if (base->stored(x.base).degree == 0) return objects.at(base->object_index(x));
  const CatCell& v = cells.at(x.base);
  if (!v) throw std::out_of_range("presheaf '" + name + "' has no value at '" + base->name_of(x) + "'");
  return v;
}

const CatRef& CatValuedPresheaf::fiber(Cell object) const { return objects.at(base->object_index(object))->category(); }

CatValuedPresheaf representable(const CatRef& base, Cell a) {
  const FiniteOmegaCat& B = *base;
  CatValuedPresheaf P;
  P.name = B.name() + "(" + B.name_of(a) + ",−)";
  P.base = base;
  auto objs = B.objects();
  std::vector<std::vector<std::uint32_t>> remaps(objs.size());
  for (std::size_t i = 0; i < objs.size(); ++i)
    P.objects.push_back(make_cell(std::make_shared<const FiniteOmegaCat>(hom_set(B, a, objs[i], &remaps[i]))));
  P.cells.resize(B.size());
  for (int deg = 1; deg <= B.top_degree(); ++deg)
    for (auto t : B.stored_of_degree(deg)) {
      Cell th{t, 0};
      Cell b = B.d(th, deg), b2 = B.c(th, deg);
      auto ib = B.object_index(b), ib2 = B.object_index(b2);
      const CatRef& src = P.objects[ib]->category();
      const CatRef& tgt = P.objects[ib2]->category();
      auto act = [&](Cell h) {
        Cell g = from_hom_cell(B, a, b, remaps[ib], h);
        return to_hom_cell(B, a, b2, remaps[ib2], star(B, th, g));
      };
      std::string nm = B.name() + "(" + B.name_of(a) + "," + B.name_of(th) + ")";
      if (deg == 1) {
        FunctorData F{nm, src, tgt, {}};
        for (std::uint32_t i = 0; i < src->size(); ++i) F.map.push_back(act({i, 0}));
        P.cells[t] = make_cell(std::move(F));
      } else {
        ModificationData m;
        m.name = nm;
        m.level = deg - 2;
        m.dom = P.cells[B.stored(t).dom];
        m.cod = P.cells[B.stored(t).cod];
        for (Cell h : src->objects()) m.components.push_back(act(h));
        P.cells[t] = make_cell(std::move(m));
      }
    }
  return P;
}

CatValuedPresheaf hom_functor(const CatRef& cat, Cell a, Variance v) {
  if (v == Variance::covariant) return representable(cat, a);
  auto op = std::make_shared<const FiniteOmegaCat>(opposite(*cat));
  CatValuedPresheaf P = representable(op, a);  // indices survive opposite()
  P.name = cat->name() + "(−," + cat->name_of(a) + ")";
  return P;
}

CatValuedPresheaf constant_presheaf(const CatRef& base, const CatRef& value) {
  CatValuedPresheaf P;
  P.name = "const(" + value->name() + ")";
  P.base = base;
  CatCell v = make_cell(value);
  for (std::size_t i = 0; i < base->objects().size(); ++i) P.objects.push_back(v);
  P.cells.resize(base->size());
  for (std::uint32_t i = 0; i < base->size(); ++i) {
    int deg = base->stored(i).degree;
    if (deg > 0) P.cells[i] = cat_e(v, deg);
  }
  return P;
}

CatValuedPresheaf presheaf_times(const CatValuedPresheaf& P, const CatRef& extra) {
  const FiniteOmegaCat& B = *P.base;
  const FiniteOmegaCat& X = *extra;
  CatValuedPresheaf Q;
  Q.name = P.name + "×" + X.name();
  Q.base = P.base;
  auto objs = B.objects();
  std::vector<CatRef> prods;
  for (Cell b : objs) {
    prods.push_back(std::make_shared<const FiniteOmegaCat>(product(*P.fiber(b), X)));
    Q.objects.push_back(make_cell(prods.back()));
  }
  auto pair = [&](std::size_t ib, Cell x, Cell y) {
    const FiniteOmegaCat& fib = *P.objects[ib]->category();
    return prods[ib]->at("(" + fib.name_of(x) + "," + X.name_of(y) + ")");
  };
  Q.cells.resize(B.size());
  for (int deg = 1; deg <= B.top_degree(); ++deg)
    for (auto t : B.stored_of_degree(deg)) {
      Cell th{t, 0};
      auto ib = B.object_index(B.d(th, deg)), ib2 = B.object_index(B.c(th, deg));
      const FiniteOmegaCat& fib = *P.objects[ib]->category();
      CatCell val = P.cells[t];
      if (deg == 1) {
        FunctorData F{val->name() + "×id", prods[ib], prods[ib2], std::vector<Cell>(prods[ib]->size())};
        for (int n = 0; n <= prods[ib]->top_degree(); ++n)
          for (Cell x : fib.cells_of_degree(n))
            for (Cell y : X.cells_of_degree(n)) F.map[pair(ib, x, y).base] = pair(ib2, val->functor().apply(x), y);
        Q.cells[t] = make_cell(std::move(F));
      } else {
        ModificationData m;
        m.name = val->name() + "×e";
        m.level = deg - 2;
        m.dom = Q.cells[B.stored(t).dom];
        m.cod = Q.cells[B.stored(t).cod];
        for (Cell o : fib.objects())
          for (Cell y : X.objects()) {
            // Product objects come in (o, y) order, matching this loop.
            m.components.push_back(pair(ib2, val->modification().at(o), X.e(y, m.level + 1)));
          }
        Q.cells[t] = make_cell(std::move(m));
      }
    }
  return Q;
}

bool approx(const CatCell& x, const CatCell& y, int k) {
  if (!x || !y) return false;
  if (k <= 0 || x->is_category() || y->is_category()) return same_cell(x, y);
  if (x->degree() != y->degree()) return false;
  const FiniteOmegaCat& T = *cat_target(x);
  if (cat_target(x) != cat_target(y) || cat_source(x) != cat_source(y)) return false;
  EquivalenceEngine eng(T);
  auto sim = [&](Cell a, Cell b) { return T.degree(a) == T.degree(b) && eng.equivalent(a, b); };
  if (x->is_functor()) {
    const auto &f = x->functor(), &g = y->functor();
    if (f.map.size() != g.map.size()) return false;
    for (std::size_t i = 0; i < f.map.size(); ++i)
      if (!sim(f.map[i], g.map[i])) return false;
    return true;
  }
  const auto &m = x->modification(), &n = y->modification();
  if (!same_cell(m.dom, n.dom) || !same_cell(m.cod, n.cod) || m.components.size() != n.components.size()) return false;
  for (std::size_t i = 0; i < m.components.size(); ++i)
    if (!sim(m.components[i], n.components[i])) return false;
  return true;
}

CheckReport check_presheaf(const CatValuedPresheaf& P) {
  CheckReport rep;
  rep.subject = P.name;
  static const char* ids[] = {"presheaf.total", "presheaf.cells", "presheaf.boundary", "presheaf.identity",
                              "presheaf.compose"};
  for (auto id : ids) rep.pass(id);
  const FiniteOmegaCat& B = *P.base;
  if (P.objects.size() != B.objects().size() || P.cells.size() != B.size())
    rep.fail("presheaf.total", "assignment sizes do not match the base");
  else
    for (std::uint32_t i = 0; i < B.size(); ++i) {
      int deg = B.stored(i).degree;
      const CatCell& v = deg == 0 ? P.objects[B.object_index({i, 0})] : P.cells[i];
      if (!v || v->degree() != deg) rep.fail("presheaf.total", "value missing or of the wrong degree", {B.stored(i).name});
    }
  if (rep.status("presheaf.total") == Status::fail) {
    for (std::size_t i = 1; i < std::size(ids); ++i) rep.skip(ids[i]);
    return rep;
  }
  for (std::uint32_t i = 0; i < B.size(); ++i) {
    const auto& s = B.stored(i);
    if (s.degree == 0) continue;
    const CatCell& v = P.cells[i];
    CheckReport sub = v->is_functor() ? check_functor(v->functor(), Strictness::strict) : check_modification(v->modification());
    if (!sub.passed()) rep.fail("presheaf.cells", "value is not a valid ∞-CAT cell", {s.name, v->name()});
    if (!same_cell(cat_dom(v), P.at({s.dom, 0})) || !same_cell(cat_cod(v), P.at({s.cod, 0})))
      rep.fail("presheaf.boundary", "d or c not preserved", {s.name});
  }
  for (std::uint32_t i = 0; i < B.size(); ++i) {
    const auto& s = B.stored(i);
    if (s.identity == kNone || s.degree >= B.top_degree()) continue;
    bool ok = safe_same([&] { return std::optional<CatCell>(P.at({s.identity, 0})); },
                        [&] { return std::optional<CatCell>(cat_identity(P.at({i, 0}))); }, nullptr, 1);
    if (!ok) rep.fail("presheaf.identity", "F(e x) is not ≈1 e F(x)", {s.name});
  }
  for (const auto& en : B.compose_entries()) {
    bool ok = safe_same([&] { return std::optional<CatCell>(P.at({en.result, 0})); },
                        [&] { return cat_compose(en.k, P.at({en.f, 0}), P.at({en.g, 0})); }, nullptr, 1);
    if (!ok)
      rep.fail("presheaf.compose", "F(f ∘k g) is not ≈1 F f ∘k F g",
               {"k=" + std::to_string(en.k), B.stored(en.f).name, B.stored(en.g).name});
  }
  return rep;
}

// ---------------------------------------------------------------------------

const CatCell& PresheafModification::at(Cell object) const {
  return components.at(source->base->object_index(object));
}

namespace {

// Whiskered naturality square at base cell f for component family `comp`.
bool square(const PresheafModification& M, Cell f, bool* strict) {
  const FiniteOmegaCat& B = *M.source->base;
  int D = B.degree(f), k = D - M.level - 1;
  const CatCell& ta = M.at(B.d(f, D));
  const CatCell& tb = M.at(B.c(f, D));
  return safe_same([&] { return cat_compose(D, cat_e(tb, k), M.source->at(f)); },
                   [&] { return cat_compose(D, M.target->at(f), cat_e(ta, k)); }, strict, 1);
}

std::vector<Cell> square_cells(const FiniteOmegaCat& B, int level) {
  std::vector<Cell> out;
  for (int deg = level + 1; deg <= B.top_degree(); ++deg)
    for (Cell f : B.cells_of_degree(deg)) out.push_back(f);
  return out;
}

std::vector<PresheafModRef> enumerate_between(const PresheafRef& P, const PresheafRef& Q, int level,
                                              const PresheafModRef& dom, const PresheafModRef& cod,
                                              std::size_t* counter) {
  const FiniteOmegaCat& B = *P->base;
  auto objs = B.objects();
  std::vector<std::vector<CatCell>> cands(objs.size());
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (level == 0) {
      for (auto& F : enumerate_functors(P->objects[i]->category(), Q->objects[i]->category()))
        cands[i].push_back(make_cell(std::move(F)));
    } else {
      for (auto& m : enumerate_modifications(dom->components[i], cod->components[i]))
        cands[i].push_back(make_cell(std::move(m)));
    }
  }
  std::vector<std::vector<Cell>> squares(objs.size());
  for (Cell f : square_cells(B, level)) {
    int D = B.degree(f);
    squares[std::max(B.object_index(B.d(f, D)), B.object_index(B.c(f, D)))].push_back(f);
  }
  PresheafModification cur;
  cur.level = level;
  cur.source = P;
  cur.target = Q;
  cur.dom = dom;
  cur.cod = cod;
  cur.components.resize(objs.size());
  std::vector<PresheafModRef> out;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == objs.size()) {
      auto m = std::make_shared<PresheafModification>(cur);
      m->name = P->name + "=>" + Q->name + "^" + std::to_string(level) + "#" + std::to_string((*counter)++);
      out.push_back(std::move(m));
      return;
    }
    for (const CatCell& c : cands[i]) {
      cur.components[i] = c;
      bool ok = true;
      for (Cell f : squares[i]) {
        bool strict = true;
        if (!square(cur, f, &strict) || !strict) {
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

bool parallel_mods(const PresheafModRef& x, const PresheafModRef& y) {
  if (x->level != y->level) return false;
  if (x->level == 0) return x->source == y->source && x->target == y->target;
  return modification_key(x->dom) == modification_key(y->dom) && modification_key(x->cod) == modification_key(y->cod);
}

}  // namespace

CheckReport check_presheaf_modification(const PresheafModification& M) {
  CheckReport rep;
  rep.subject = M.name;
  rep.pass("pmod.chain");
  rep.pass("pmod.components");
  rep.pass("pmod.naturality");
  bool chain_ok = M.source && M.target && M.source->base == M.target->base;
  if (chain_ok && M.level > 0)
    chain_ok = M.dom && M.cod && M.dom->level == M.level - 1 && M.cod->level == M.level - 1 && parallel_mods(M.dom, M.cod) &&
               M.dom->source == M.source && M.dom->target == M.target;
  if (!chain_ok) {
    rep.fail("pmod.chain", "boundaries are not parallel");
    rep.skip("pmod.components");
    rep.skip("pmod.naturality");
    return rep;
  }
  const FiniteOmegaCat& B = *M.source->base;
  auto objs = B.objects();
  if (M.components.size() != objs.size()) {
    rep.fail("pmod.components", "component count differs from the base object count");
  } else {
    for (std::size_t i = 0; i < objs.size(); ++i) {
      const CatCell& c = M.components[i];
      bool ok = c && c->degree() == M.level + 1;
      if (ok && M.level == 0)
        ok = c->functor().source == M.source->objects[i]->category() &&
             c->functor().target == M.target->objects[i]->category() &&
             check_functor(c->functor(), Strictness::strict).passed();
      else if (ok)
        ok = same_cell(c->modification().dom, M.dom->components[i]) &&
             same_cell(c->modification().cod, M.cod->components[i]) && check_modification(c->modification()).passed();
      if (!ok) rep.fail("pmod.components", "component is not a cell between the right boundaries", {B.name_of(objs[i])});
    }
  }
  if (rep.status("pmod.components") == Status::fail) {
    rep.skip("pmod.naturality");
    return rep;
  }
  bool strict = true;
  for (Cell f : square_cells(B, M.level))
    if (!square(M, f, &strict)) rep.fail("pmod.naturality", "naturality square fails up to ≈1", {B.name_of(f)});
  rep.fact("strict", strict ? "true" : "false");
  return rep;
}

std::vector<PresheafModRef> enumerate_presheaf_modifications(const PresheafRef& P, const PresheafRef& Q, int level) {
  if (level < 0) throw std::invalid_argument("negative modification level");
  if (P->base != Q->base) throw std::invalid_argument("presheaves live on different bases");
  std::size_t counter = 0;
  auto layer = enumerate_between(P, Q, 0, nullptr, nullptr, &counter);
  for (int n = 1; n <= level; ++n) {
    std::vector<PresheafModRef> next;
    counter = 0;
    for (const auto& x : layer)
      for (const auto& y : layer)
        if (parallel_mods(x, y))
          for (auto& m : enumerate_between(P, Q, n, x, y, &counter)) next.push_back(std::move(m));
    layer = std::move(next);
  }
  return layer;
}

std::string modification_key(const PresheafModRef& m) {
  std::string s = "PM" + std::to_string(m->level) + "(" + ptr_key(m->source.get()) + ">" + ptr_key(m->target.get());
  if (m->level > 0) s += "|" + modification_key(m->dom) + "|" + modification_key(m->cod);
  s += ":";
  for (const auto& c : m->components) s += cat_key(c) + ";";
  return s + ")";
}

std::optional<PresheafModRef> compose(int k, const PresheafModRef& f, const PresheafModRef& g) {
  int deg = f->level + 1;
  if (k < 1 || k > deg || g->level != f->level) return std::nullopt;
  // d^k f against c^k g
  PresheafModRef df = f, cg = g;
  for (int i = 0; i < k - 1; ++i) {
    df = df->dom;
    cg = cg->cod;
  }
  bool ok = k == deg ? f->source == g->target : modification_key(df->dom) == modification_key(cg->cod);
  if (!ok) return std::nullopt;
  auto out = std::make_shared<PresheafModification>();
  out->level = f->level;
  out->name = f->name + "∘" + std::to_string(k) + g->name;
  out->source = g->source;
  out->target = f->target;
  for (std::size_t i = 0; i < f->components.size(); ++i) {
    auto c = cat_compose(k, f->components[i], g->components[i]);
    if (!c) return std::nullopt;
    out->components.push_back(*c);
  }
  if (f->level > 0) {
    if (k == 1) {
      out->dom = g->dom;
      out->cod = f->cod;
    } else {
      auto d = compose(k - 1, f->dom, g->dom);
      auto c = compose(k - 1, f->cod, g->cod);
      if (!d || !c) return std::nullopt;
      out->dom = *d;
      out->cod = *c;
    }
  }
  return PresheafModRef(out);
}

PresheafModRef identity_modification(const PresheafRef& P) {
  auto m = std::make_shared<PresheafModification>();
  m->name = "id_" + P->name;
  m->source = m->target = P;
  for (const auto& o : P->objects) m->components.push_back(cat_identity(o));
  return m;
}

PresheafModRef identity_modification(const PresheafModRef& x) {
  auto m = std::make_shared<PresheafModification>();
  m->name = "e(" + x->name + ")";
  m->level = x->level + 1;
  m->source = x->source;
  m->target = x->target;
  m->dom = m->cod = x;
  for (const auto& c : x->components) m->components.push_back(cat_identity(c));
  return m;
}

// ---------------------------------------------------------------------------

Cell yoneda_evaluate(const PresheafModification& tau, Cell a) {
  const FiniteOmegaCat& B = *tau.source->base;
  return evaluate_at(tau.at(a), hom_cell(B, a, a, B.e(a)));
}

PresheafModRef yoneda_extend(const PresheafRef& Y, const PresheafRef& F, Cell a, Cell beta) {
  const FiniteOmegaCat& B = *Y->base;
  const FiniteOmegaCat& Fa = *F->fiber(a);
  int n = Fa.degree(beta);
  if (n < 0) throw std::invalid_argument("yoneda_extend: cell outside F(a)");
  auto m = std::make_shared<PresheafModification>();
  m->name = "ext(" + Fa.name_of(beta) + ")";
  m->level = n;
  m->source = Y;
  m->target = F;
  if (n > 0) {
    m->dom = yoneda_extend(Y, F, a, Fa.dom(beta));
    m->cod = yoneda_extend(Y, F, a, Fa.cod(beta));
  }
  auto objs = B.objects();
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::vector<std::uint32_t> remap;
    hom_set(B, a, objs[i], &remap);
    const CatRef& H = Y->objects[i]->category();
    auto g_of = [&](Cell h) { return from_hom_cell(B, a, objs[i], remap, h); };
    if (n == 0) {
      FunctorData f{m->name + "_" + B.name_of(objs[i]), H, F->objects[i]->category(), {}};
      for (std::uint32_t j = 0; j < H->size(); ++j) f.map.push_back(evaluate_at(F->at(g_of({j, 0})), beta));
      m->components.push_back(make_cell(std::move(f)));
    } else {
      ModificationData md;
      md.name = m->name + "_" + B.name_of(objs[i]);
      md.level = n - 1;
      md.dom = m->dom->components[i];
      md.cod = m->cod->components[i];
      for (Cell h : H->objects()) md.components.push_back(F->at(g_of(h))->functor().apply(beta));
      m->components.push_back(make_cell(std::move(md)));
    }
  }
  return m;
}

CheckReport yoneda_check(const CatRef& base, Cell a, const PresheafRef& F) {
  CheckReport rep;
  rep.subject = "Yoneda at " + base->name_of(a) + " for " + F->name;
  static const char* ids[] = {"yoneda.count",       "yoneda.injective",       "yoneda.surjective",
                              "yoneda.roundtrip_cells", "yoneda.roundtrip_mods", "yoneda.extension_valid",
                              "yoneda.natural_in_a", "yoneda.natural_in_F"};
  CheckReport pre = check_presheaf(*F);
  if (!pre.passed()) {
    rep.fail("yoneda.presheaf", "F is not a presheaf", pre.failed_checks());
    for (auto id : ids) rep.skip(id);
    return rep;
  }
  rep.pass("yoneda.presheaf");
  for (auto id : ids) rep.pass(id);
  const FiniteOmegaCat& B = *base;
  auto Y = std::make_shared<const CatValuedPresheaf>(representable(base, a));
  const FiniteOmegaCat& Fa = *F->fiber(a);
  std::vector<std::vector<PresheafModRef>> by_level;
  for (int n = 0; n <= Fa.top_degree(); ++n) {
    auto mods = enumerate_presheaf_modifications(Y, F, n);
    auto cells = Fa.cells_of_degree(n);
    rep.fact("count." + std::to_string(n), std::to_string(mods.size()) + "/" + std::to_string(cells.size()));
    if (mods.size() != cells.size())
      rep.fail("yoneda.count", "level " + std::to_string(n) + ": " + std::to_string(mods.size()) +
                                   " modifications for " + std::to_string(cells.size()) + " cells");
    std::map<Cell, std::string> seen;
    for (const auto& m : mods) {
      Cell v = yoneda_evaluate(*m, a);
      auto [it, fresh] = seen.emplace(v, m->name);
      if (!fresh) rep.fail("yoneda.injective", "two modifications evaluate to one cell", {it->second, m->name, Fa.name_of(v)});
      if (yoneda_evaluate(*yoneda_extend(Y, F, a, v), a) != v || modification_key(yoneda_extend(Y, F, a, v)) != modification_key(m))
        rep.fail("yoneda.roundtrip_mods", "extension of the evaluation differs", {m->name});
    }
    for (Cell beta : cells) {
      if (!seen.count(beta)) rep.fail("yoneda.surjective", "cell not hit", {Fa.name_of(beta)});
      auto ext = yoneda_extend(Y, F, a, beta);
      if (yoneda_evaluate(*ext, a) != beta) rep.fail("yoneda.roundtrip_cells", "evaluation of the extension differs", {Fa.name_of(beta)});
      if (!check_presheaf_modification(*ext).passed())
        rep.fail("yoneda.extension_valid", "extension is not a modification", {Fa.name_of(beta)});
    }
    by_level.push_back(std::move(mods));
  }
  // Naturality in a: for f: a → a1, eval_{a1}(τ ∘ Y(f)) = F(f)(eval_a τ).
  std::size_t a_squares = 0;
  for (Cell f : B.cells_of_degree(1)) {
    if (B.dom(f) != a) continue;
    Cell a1 = B.cod(f);
    auto Y1 = std::make_shared<const CatValuedPresheaf>(representable(base, a1));
    auto objs = B.objects();
    std::vector<CatCell> yf;  // Y(f)_b: base(a1, b) → base(a, b), g ↦ g ∗ f
    for (std::size_t i = 0; i < objs.size(); ++i) {
      std::vector<std::uint32_t> r1, r0;
      hom_set(B, a1, objs[i], &r1);
      hom_set(B, a, objs[i], &r0);
      const CatRef& H1 = Y1->objects[i]->category();
      FunctorData fn{"Y(" + B.name_of(f) + ")_" + B.name_of(objs[i]), H1, Y->objects[i]->category(), {}};
      for (std::uint32_t j = 0; j < H1->size(); ++j)
        fn.map.push_back(to_hom_cell(B, a, objs[i], r0, star(B, from_hom_cell(B, a1, objs[i], r1, {j, 0}), f)));
      yf.push_back(make_cell(std::move(fn)));
    }
    auto i1 = B.object_index(a1);
    Cell unit1 = hom_cell(B, a1, a1, B.e(a1));
    for (const auto& layer : by_level)
      for (const auto& tau : layer) {
        ++a_squares;
        int n = tau->level;
        try {
          auto w = cat_compose(n + 1, tau->components[i1], cat_e(yf[i1], n));
          Cell lhs = evaluate_at(*w, unit1);
          Cell rhs = evaluate_at(F->at(f), yoneda_evaluate(*tau, a));
          if (lhs != rhs) rep.fail("yoneda.natural_in_a", "square fails", {B.name_of(f), tau->name});
        } catch (const std::exception& ex) {
          rep.fail("yoneda.natural_in_a", ex.what(), {B.name_of(f), tau->name});
        }
      }
  }
  rep.fact("natural_in_a.squares", std::to_string(a_squares));
  // Naturality in F over the sample of natural transformations F ⇒ F.
  auto sample = enumerate_presheaf_modifications(F, F, 0);
  std::size_t f_squares = 0;
  auto ia = B.object_index(a);
  Cell unit = hom_cell(B, a, a, B.e(a));
  for (const auto& alpha : sample)
    for (const auto& layer : by_level)
      for (const auto& tau : layer) {
        ++f_squares;
        int n = tau->level;
        try {
          auto w = cat_compose(n + 1, cat_e(alpha->components[ia], n), tau->components[ia]);
          Cell lhs = evaluate_at(*w, unit);
          Cell rhs = evaluate_at(alpha->components[ia], yoneda_evaluate(*tau, a));
          if (lhs != rhs) rep.fail("yoneda.natural_in_F", "square fails", {alpha->name, tau->name});
        } catch (const std::exception& ex) {
          rep.fail("yoneda.natural_in_F", ex.what(), {alpha->name, tau->name});
        }
      }
  rep.fact("natural_in_F.sample", std::to_string(sample.size()));
  rep.fact("natural_in_F.squares", std::to_string(f_squares));
  return rep;
}

// ---------------------------------------------------------------------------

FragmentSource<CatCell> cat_fragment(const std::vector<CatRef>& cats, const std::string& name) {
  FragmentSource<CatCell> src;
  src.name = name;
  int top = 0;
  for (const auto& c : cats) {
    src.objects.push_back(make_cell(c));
    top = std::max(top, c->top_degree());
  }
  src.top_degree = top + 1;
  src.higher = [](const CatCell& x, const CatCell& y) {
    std::vector<CatCell> out;
    if (x->is_category()) {
      for (auto& f : enumerate_functors(x->category(), y->category())) out.push_back(make_cell(std::move(f)));
    } else {
      for (auto& m : enumerate_modifications(x, y)) out.push_back(make_cell(std::move(m)));
    }
    return out;
  };
  src.compose = [](int k, const CatCell& f, const CatCell& g) { return cat_compose(k, f, g); };
  src.identity = [](const CatCell& x) { return cat_identity(x); };
  src.key = [](const CatCell& x) { return cat_key(x); };
  src.label = [](const CatCell& x) { return x->name(); };
  return src;
}

bool functor_is_equivalence(const FunctorData& phi) {
  auto fr = build_fragment(cat_fragment({phi.source, phi.target}, "∞-CAT[" + phi.source->name() + "," + phi.target->name() + "]"));
  auto cell = fr.find(cat_key(make_cell(phi)));
  if (!cell) return false;
  EquivalenceEngine eng(fr.cat);
  return eng.is_equivalence_arrow(*cell);
}

bool categories_equivalent(const CatRef& a, const CatRef& b) {
  if (a == b || *a == *b) return true;
  auto fr = build_fragment(cat_fragment({a, b}, "∞-CAT[" + a->name() + "," + b->name() + "]"));
  auto x = fr.find(cat_key(make_cell(a))), y = fr.find(cat_key(make_cell(b)));
  if (!x || !y) return false;
  EquivalenceEngine eng(fr.cat);
  return eng.equivalent(*x, *y);
}

Representability representability_check(const PresheafRef& F, Cell a, Cell beta0) {
  Representability res;
  CheckReport& rep = res.report;
  rep.subject = F->name + " at " + F->base->name_of(a);
  const FiniteOmegaCat& B = *F->base;
  if (F->fiber(a)->degree(beta0) != 0) throw std::invalid_argument("representability_check: β0 must be an object of F(a)");
  CheckReport pre = check_presheaf(*F);
  if (!pre.passed()) {
    rep.fail("representable.presheaf", "F is not a presheaf", pre.failed_checks());
    rep.skip("representable.weak");
    rep.fact("strict", "false");
    rep.fact("weak", "false");
    return res;
  }
  rep.pass("representable.presheaf");
  auto Y = std::make_shared<const CatValuedPresheaf>(representable(F->base, a));
  auto tau = yoneda_extend(Y, F, a, beta0);
  auto objs = B.objects();
  bool strict = true, weak = true;
  std::string witness;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    const FunctorData& phi = tau->components[i]->functor();
    const FiniteOmegaCat& H = *phi.source;
    const FiniteOmegaCat& Fb = *phi.target;
    std::map<Cell, int> hits;
    for (Cell x : phi.map) ++hits[x];
    bool bij = H.top_degree() == Fb.top_degree() && H.size() == Fb.size();
    for (std::uint32_t j = 0; j < Fb.size(); ++j) {
      int h = hits.count({j, 0}) ? hits[{j, 0}] : 0;
      if (h != 1) {
        bij = false;
        if (witness.empty())
          witness = B.name_of(objs[i]) + ":" + Fb.stored(j).name + (h == 0 ? " has no preimage" : " has several preimages");
      }
    }
    if (!bij) strict = false;
    // A bijective strict functor is an isomorphism, hence an equivalence.
    if (!bij && !functor_is_equivalence(phi)) {
      weak = false;
      rep.fail("representable.weak", "Φ is not an equivalence of categories", {B.name_of(objs[i])});
    }
  }
  if (weak) rep.pass("representable.weak");
  res.strict = strict;
  res.weak = weak;
  rep.fact("strict", strict ? "true" : "false");
  rep.fact("weak", weak ? "true" : "false");
  if (!witness.empty()) rep.fact("strict_witness", witness);
  return res;
}

// ---------------------------------------------------------------------------

namespace {

struct PshCell {
  PresheafRef presheaf;    // set for objects
  PresheafModRef mod;      // set above
};

}  // namespace

CheckReport yoneda_embedding_check(const CatRef& cat) {
  CheckReport rep;
  rep.subject = "Yoneda embedding of " + cat->name();
  auto op = std::make_shared<const FiniteOmegaCat>(opposite(*cat));
  auto objs = cat->objects();
  FragmentSource<PshCell> src;
  src.name = "PSh(" + cat->name() + ")";
  src.top_degree = std::max(1, cat->top_degree());
  for (Cell x : objs) {
    auto P = std::make_shared<CatValuedPresheaf>(representable(op, x));
    P->name = "Y(" + cat->name_of(x) + ")";
    src.objects.push_back({P, nullptr});
  }
  src.higher = [](const PshCell& x, const PshCell& y) {
    std::vector<PshCell> out;
    std::size_t counter = 0;
    std::vector<PresheafModRef> mods =
        x.mod ? enumerate_between(x.mod->source, x.mod->target, x.mod->level + 1, x.mod, y.mod, &counter)
              : enumerate_between(x.presheaf, y.presheaf, 0, nullptr, nullptr, &counter);
    for (auto& m : mods) out.push_back({nullptr, m});
    return out;
  };
  src.compose = [](int k, const PshCell& f, const PshCell& g) -> std::optional<PshCell> {
    auto r = compose(k, f.mod, g.mod);
    if (!r) return std::nullopt;
    return PshCell{nullptr, *r};
  };
  src.identity = [](const PshCell& x) {
    return PshCell{nullptr, x.mod ? identity_modification(x.mod) : identity_modification(x.presheaf)};
  };
  src.key = [](const PshCell& x) { return x.mod ? modification_key(x.mod) : "P" + ptr_key(x.presheaf.get()); };
  src.label = [](const PshCell& x) { return x.mod ? x.mod->name : x.presheaf->name; };
  auto fr = build_fragment(src);
  EquivalenceEngine in_cat(*cat), in_psh(fr.cat);
  rep.pass("yoneda_embedding.preserves");
  rep.pass("yoneda_embedding.reflects");
  auto fobjs = fr.cat.objects();
  for (std::size_t i = 0; i < objs.size(); ++i)
    for (std::size_t j = 0; j < objs.size(); ++j) {
      bool l = in_cat.equivalent(objs[i], objs[j]);
      bool p = in_psh.equivalent(fobjs[i], fobjs[j]);
      std::vector<std::string> w{cat->name_of(objs[i]), cat->name_of(objs[j])};
      if (l && !p) rep.fail("yoneda_embedding.preserves", "x ∼ y but Y(x) ≁ Y(y)", w);
      if (p && !l) rep.fail("yoneda_embedding.reflects", "Y(x) ∼ Y(y) but x ≁ y", w);
    }
  rep.fact("presheaf_cells", std::to_string(fr.cat.size()));
  return rep;
}

}  // namespace ocat

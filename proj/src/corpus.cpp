#include "ocat/corpus.hpp"

#include <map>
#include <set>

namespace ocat::corpus {

namespace {

std::string id_name(const std::string& x) { return "e(" + x + ")"; }

std::string join(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

// Every function {0..n-1} → {0..m-1} as a value vector, in lexicographic order.
std::vector<std::vector<int>> functions(int n, int m) {
  std::vector<std::vector<int>> out;
  if (n == 0) return {{}};
  if (m == 0) return out;
  std::vector<int> v(n, 0);
  while (true) {
    out.push_back(v);
    int i = n - 1;
    while (i >= 0 && ++v[i] == m) v[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

}  // namespace

FiniteOmegaCat one_category(const std::string& name, const std::vector<std::string>& objects,
                            const std::vector<ArrowSpec>& arrows,
                            const std::function<std::string(const std::string&, const std::string&)>& compose) {
  CategoryBuilder b(name, 1);
  b.strict();
  for (const auto& o : objects) b.cell(o, 0);
  b.auto_identities();
  std::map<std::string, std::pair<std::string, std::string>> ends;
  for (const auto& o : objects) ends[id_name(o)] = {o, o};
  for (const auto& a : arrows) {
    b.cell(a.name, 1, a.dom, a.cod);
    ends[a.name] = {a.dom, a.cod};
  }
  std::set<std::string> ids;
  for (const auto& o : objects) ids.insert(id_name(o));
  for (const auto& [g, ge] : ends)
    for (const auto& [f, fe] : ends) {
      if (fe.second != ge.first) continue;
      std::string h = ids.count(f) ? g : ids.count(g) ? f : compose(g, f);
      b.compose(1, g, f, h);
    }
  return b.build();
}

FiniteOmegaCat terminal() { return one_category("1", {"*"}, {}, nullptr); }

FiniteOmegaCat discrete(int n) {
  std::vector<std::string> objs;
  for (int i = 0; i < n; ++i) objs.push_back("x" + std::to_string(i));
  return one_category("Disc" + std::to_string(n), objs, {}, nullptr);
}

FiniteOmegaCat walking_arrow() {
  return one_category("Arrow", {"a", "b"}, {{"f", "a", "b"}}, [](auto&, auto&) -> std::string {
    throw std::logic_error("walking arrow has no non-identity composites");
  });
}

FiniteOmegaCat walking_iso() {
  return one_category("Iso", {"a", "b"}, {{"f", "a", "b"}, {"g", "b", "a"}},
                      [](const std::string& g, const std::string&) { return g == "g" ? std::string("e(a)") : std::string("e(b)"); });
}

FiniteOmegaCat cyclic(int n) {
  auto nm = [n](int i) {
    i %= n;
    return i == 0 ? std::string("e(*)") : i == 1 ? std::string("g") : "g^" + std::to_string(i);
  };
  std::vector<ArrowSpec> arrows;
  for (int i = 1; i < n; ++i) arrows.push_back({nm(i), "*", "*"});
  auto power = [&](const std::string& s) { return s == "g" ? 1 : std::stoi(s.substr(2)); };
  return one_category("Z" + std::to_string(n), {"*"}, arrows,
                      [&](const std::string& g, const std::string& f) { return nm(power(g) + power(f)); });
}

FiniteOmegaCat chain(int n) {
  std::vector<std::string> objs;
  std::vector<ArrowSpec> arrows;
  for (int i = 0; i < n; ++i) objs.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) arrows.push_back({std::to_string(i) + "<" + std::to_string(j), objs[i], objs[j]});
  return one_category("Chain" + std::to_string(n), objs, arrows, [](const std::string& g, const std::string& f) {
    return f.substr(0, f.find('<')) + "<" + g.substr(g.find('<') + 1);
  });
}

FiniteOmegaCat diamond() {
  std::vector<ArrowSpec> arrows{{"bot<l", "bot", "l"}, {"bot<r", "bot", "r"}, {"l<top", "l", "top"},
                                {"r<top", "r", "top"}, {"bot<top", "bot", "top"}};
  return one_category("Diamond", {"bot", "l", "r", "top"}, arrows, [](const std::string& g, const std::string& f) {
    return f.substr(0, f.find('<')) + "<" + g.substr(g.find('<') + 1);
  });
}

FiniteOmegaCat split_idempotent() {
  static const std::map<std::pair<std::string, std::string>, std::string> table{
      {{"g", "f"}, "u"}, {{"f", "g"}, "v"}, {{"f", "u"}, "f"}, {{"u", "g"}, "g"},
      {{"v", "f"}, "f"}, {{"g", "v"}, "g"}, {{"u", "u"}, "u"}, {{"v", "v"}, "v"}};
  return one_category("Split", {"a", "b"}, {{"f", "a", "b"}, {"g", "b", "a"}, {"u", "a", "a"}, {"v", "b", "b"}},
                      [](const std::string& g, const std::string& f) { return table.at({g, f}); });
}

FiniteOmegaCat finset_sizes(const std::vector<int>& sizes, const std::string& name) {
  std::vector<std::string> objs;
  std::map<std::string, int> seen;
  for (int s : sizes) {
    std::string o = std::to_string(s);
    for (int k = seen[o]++; k > 0; --k) o += "'";
    objs.push_back(o);
  }
  std::vector<ArrowSpec> arrows;
  // name → (dom index, cod index, values); identities excluded.
  std::map<std::string, std::tuple<int, int, std::vector<int>>> fn;
  auto fname = [&](int i, int j, const std::vector<int>& v) {
    bool ident = i == j;
    for (int k = 0; ident && k < sizes[i]; ++k) ident = v[k] == k;
    return ident ? id_name(objs[i]) : objs[i] + ">" + objs[j] + join(v);
  };
  for (std::size_t i = 0; i < sizes.size(); ++i)
    for (std::size_t j = 0; j < sizes.size(); ++j)
      for (const auto& v : functions(sizes[i], sizes[j])) {
        std::string n = fname(static_cast<int>(i), static_cast<int>(j), v);
        if (i == j && n == id_name(objs[i])) continue;
        arrows.push_back({n, objs[i], objs[j]});
        fn[n] = {static_cast<int>(i), static_cast<int>(j), v};
      }
  return one_category(name, objs, arrows, [&](const std::string& g, const std::string& f) {
    const auto& [fi, fj, fv] = fn.at(f);
    const auto& [gi, gj, gv] = fn.at(g);
    (void)fj;
    (void)gi;
    std::vector<int> h;
    for (int x : fv) h.push_back(gv[x]);
    return fname(fi, gj, h);
  });
}

FiniteOmegaCat finset_subsets(int n) {
  // Subsets of {1..n} by bitmask; a function is stored by positions.
  std::vector<std::string> objs;
  std::vector<std::vector<int>> elems;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> e;
    std::string s = "{";
    for (int k = 0; k < n; ++k)
      if (mask >> k & 1) {
        s += (e.empty() ? "" : ",") + std::to_string(k + 1);
        e.push_back(k + 1);
      }
    objs.push_back(s + "}");
    elems.push_back(e);
  }
  std::map<std::string, std::tuple<int, int, std::vector<int>>> fn;
  std::vector<ArrowSpec> arrows;
  auto fname = [&](int i, int j, const std::vector<int>& v) {
    bool ident = i == j;
    for (std::size_t k = 0; ident && k < v.size(); ++k) ident = v[k] == static_cast<int>(k);
    if (ident) return id_name(objs[i]);
    std::vector<int> vals;
    for (int x : v) vals.push_back(elems[j][x]);
    return objs[i] + ">" + objs[j] + join(vals);
  };
  for (std::size_t i = 0; i < objs.size(); ++i)
    for (std::size_t j = 0; j < objs.size(); ++j)
      for (const auto& v : functions(static_cast<int>(elems[i].size()), static_cast<int>(elems[j].size()))) {
        std::string nm = fname(static_cast<int>(i), static_cast<int>(j), v);
        if (nm == id_name(objs[i])) continue;
        arrows.push_back({nm, objs[i], objs[j]});
        fn[nm] = {static_cast<int>(i), static_cast<int>(j), v};
      }
  return one_category("FinSet≤" + std::to_string(n), objs, arrows, [&](const std::string& g, const std::string& f) {
    const auto& [fi, fj, fv] = fn.at(f);
    const auto& [gi, gj, gv] = fn.at(g);
    (void)fj;
    (void)gi;
    std::vector<int> h;
    for (int x : fv) h.push_back(gv[x]);
    return fname(fi, gj, h);
  });
}

FiniteOmegaCat finbool() {
  // 2^k for k = 0, 1, 2 atoms; a homomorphism 2^A → 2^B is preimage along
  // some h: B → A, named by the values of h.
  const std::vector<std::string> objs{"B1", "B2", "B4"};
  std::map<std::string, std::tuple<int, int, std::vector<int>>> fn;
  std::vector<ArrowSpec> arrows;
  auto fname = [&](int i, int j, const std::vector<int>& h) {
    bool ident = i == j;
    for (std::size_t k = 0; ident && k < h.size(); ++k) ident = h[k] == static_cast<int>(k);
    return ident ? id_name(objs[i]) : objs[i] + ">" + objs[j] + join(h);
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (const auto& h : functions(j, i)) {
        std::string nm = fname(i, j, h);
        if (nm == id_name(objs[i])) continue;
        arrows.push_back({nm, objs[i], objs[j]});
        fn[nm] = {i, j, h};
      }
  return one_category("FinBool", objs, arrows, [&](const std::string& g, const std::string& f) {
    const auto& [fi, fj, fh] = fn.at(f);  // f: 2^fi → 2^fj, fh: fj atoms → fi atoms
    const auto& [gi, gj, gh] = fn.at(g);
    (void)fj;
    (void)gi;
    std::vector<int> h;  // gj atoms → fi atoms: fh ∘ gh
    for (int x : gh) h.push_back(fh[x]);
    return fname(fi, gj, h);
  });
}

FiniteOmegaCat codiscrete2(const FiniteOmegaCat& C) {
  if (C.top_degree() != 1) throw std::invalid_argument("codiscrete2 needs a 1-category");
  FiniteOmegaCat out = raise_top_degree(C, 1);
  out.set_name(C.name() + "⁼");
  out.set_top_degree(2);
  auto ones = C.stored_of_degree(1);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> two;
  for (auto f : ones)
    for (auto g : ones) {
      const auto &sf = C.stored(f), &sg = C.stored(g);
      if (sf.dom != sg.dom || sf.cod != sg.cod) continue;
      two[{f, g}] = out.add_cell("[" + sf.name + "," + sg.name + "]", 2, f, g);
    }
  for (auto f : ones) out.set_identity(f, two.at({f, f}));
  for (auto [fg, x] : two)
    for (auto [gh, y] : two)
      if (fg.first == gh.second) out.set_compose(1, x, y, two.at({gh.first, fg.second}));
  for (auto [p, x] : two)
    for (auto [q, y] : two) {
      if (C.stored(q.first).cod != C.stored(p.first).dom) continue;
      auto top = C.raw_compose(1, p.first, q.first), bottom = C.raw_compose(1, p.second, q.second);
      if (top && bottom) out.set_compose(2, x, y, two.at({*top, *bottom}));
    }
  out.set_declared_strict(true);
  return out;
}

FiniteOmegaCat suspension(const FiniteOmegaCat& M) {
  if (M.top_degree() != 1 || M.objects().size() != 1) throw std::invalid_argument("suspension needs a one-object 1-category");
  FiniteOmegaCat out("Σ" + M.name(), 2);
  out.set_declared_strict(true);
  auto star = out.add_cell("*", 0);
  auto one = out.add_cell("e(*)", 1, star, star);
  out.set_identity(star, one);
  out.set_compose(1, one, one, one);
  Cell m0 = M.objects()[0];
  Cell unit = *M.identity(m0);
  std::map<std::uint32_t, std::uint32_t> slot;
  for (auto x : M.stored_of_degree(1))
    slot[x] = out.add_cell(Cell{x, 0} == unit ? "e(e(*))" : M.stored(x).name, 2, one, one);
  out.set_identity(one, slot.at(unit.base));
  for (const auto& en : M.compose_entries()) {
    out.set_compose(1, slot.at(en.f), slot.at(en.g), slot.at(en.result));
    out.set_compose(2, slot.at(en.f), slot.at(en.g), slot.at(en.result));
  }
  return out;
}

FiniteOmegaCat pseudo_iso() {
  FiniteOmegaCat c = codiscrete2(split_idempotent());
  c.set_name("PseudoIso");
  return c;
}

FunctorData collapse_functor(const CatRef& pseudo, const CatRef& iso2) {
  const FiniteOmegaCat& S = *pseudo;
  const FiniteOmegaCat& T = *iso2;
  std::map<std::string, std::string> one{{"e(a)", "e(a)"}, {"u", "e(a)"}, {"e(b)", "e(b)"},
                                         {"v", "e(b)"},    {"f", "f"},    {"g", "g"}};
  FunctorData F{"collapse", pseudo, iso2, {}};
  for (std::uint32_t i = 0; i < S.size(); ++i) {
    const auto& s = S.stored(i);
    if (s.degree == 0) F.map.push_back(T.at(s.name));
    else if (s.degree == 1) F.map.push_back(T.at(one.at(s.name)));
    else F.map.push_back(T.e(T.at(one.at(S.stored(s.dom).name))));
  }
  return F;
}

FunctorData constant_functor(const CatRef& source, const CatRef& target, Cell x) {
  FunctorData F{"const_" + target->name_of(x), source, target, {}};
  for (std::uint32_t i = 0; i < source->size(); ++i) F.map.push_back(target->e(x, source->stored(i).degree));
  return F;
}

std::vector<Entry> categories() {
  auto mk = [](FiniteOmegaCat c) { return std::make_shared<const FiniteOmegaCat>(std::move(c)); };
  std::vector<Entry> out;
  auto add = [&](FiniteOmegaCat c) {
    std::string n = c.name();
    out.push_back({n, mk(std::move(c))});
  };
  add(terminal());
  add(discrete(2));
  add(walking_arrow());
  add(walking_iso());
  add(cyclic(2));
  add(cyclic(3));
  add(chain(3));
  add(diamond());
  add(split_idempotent());
  add(finset_sizes({0, 1, 2}));
  add(finbool());
  {
    auto c = raise_top_degree(walking_iso(), 2);
    c.set_name("Iso₂");
    add(std::move(c));
  }
  add(codiscrete2(walking_iso()));
  add(pseudo_iso());
  add(suspension(cyclic(2)));
  return out;
}

std::vector<PresheafEntry> presheaves() {
  std::vector<PresheafEntry> out;
  auto share = [](CatValuedPresheaf p) { return std::make_shared<const CatValuedPresheaf>(std::move(p)); };
  auto cat = [](FiniteOmegaCat c) { return std::make_shared<const FiniteOmegaCat>(std::move(c)); };
  auto arrow = cat(walking_arrow());
  auto iso = cat(walking_iso());
  auto chain3 = cat(chain(3));
  auto sz2 = cat(suspension(cyclic(2)));
  auto pseudo = cat(pseudo_iso());
  auto hom = [&](const CatRef& c, const std::string& a) {
    auto P = hom_functor(c, c->at(a), Variance::contravariant);
    return PresheafEntry{P.name, share(std::move(P))};
  };
  out.push_back(hom(arrow, "a"));
  out.push_back(hom(arrow, "b"));
  out.push_back(hom(iso, "a"));
  out.push_back(hom(chain3, "1"));
  out.push_back(hom(sz2, "*"));
  out.push_back(hom(pseudo, "a"));
  auto arrow_op = cat(opposite(*arrow));
  auto chain_op = cat(opposite(*chain3));
  auto term = cat(terminal());
  out.push_back({"const(1) on Chain3^op", share(constant_presheaf(chain_op, term))});
  out.push_back({"const(Arrow) on Arrow^op", share(constant_presheaf(arrow_op, arrow))});
  {
    // Fibers 2 ↦ Arrow, 1 ↦ Arrow, 0 ↦ 1 on Chain3^op; 2>1 is the identity,
    // anything into 0 collapses.
    CatValuedPresheaf P;
    P.name = "toy on Chain3^op";
    P.base = chain_op;
    auto A = make_cell(arrow);
    auto T = make_cell(term);
    P.objects = {T, A, A};  // objects in order 0, 1, 2
    P.cells.resize(chain_op->size());
    for (auto i : chain_op->stored_of_degree(1)) {
      Cell x{i, 0};
      Cell from = chain_op->dom(x), to = chain_op->cod(x);
      const CatRef& src = P.fiber(from);
      const CatRef& tgt = P.fiber(to);
      FunctorData F;
      if (src == tgt)
        F = identity_functor(src);
      else
        F = constant_functor(src, tgt, tgt->objects()[0]);
      F.name = "P(" + chain_op->name_of(x) + ")";
      P.cells[i] = make_cell(std::move(F));
    }
    out.push_back({P.name, share(std::move(P))});
  }
  {
    auto Y = hom_functor(arrow, arrow->at("a"), Variance::contravariant);
    auto D = presheaf_times(Y, iso);
    out.push_back({D.name, share(std::move(D))});
  }
  return out;
}

}  // namespace ocat::corpus

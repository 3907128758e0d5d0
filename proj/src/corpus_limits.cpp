// Limit instances, toy adjunctions and concrete dualities for tests and the
// acceptance run.

#include <stdexcept>

#include "ocat/corpus.hpp"

namespace ocat::corpus {

namespace {

CatRef share(FiniteOmegaCat c) { return std::make_shared<const FiniteOmegaCat>(std::move(c)); }

std::string join(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

Cell unique_between(const FiniteOmegaCat& C, Cell a, Cell b) {
  auto xs = C.arrows(a, b);
  if (xs.size() != 1)
    throw std::logic_error("'" + C.name() + "' has " + std::to_string(xs.size()) + " cells " + C.name_of(a) + " → " +
                           C.name_of(b));
  return xs[0];
}

// Same table on both sides up to the choice of CatRef.
FunctorData index_functor(const std::string& name, const CatRef& source, const CatRef& target) {
  FunctorData F{name, source, target, {}};
  for (std::uint32_t i = 0; i < source->size(); ++i) F.map.push_back({i, 0});
  return F;
}

std::vector<Cell> identities(const FiniteOmegaCat& C) {
  std::vector<Cell> out;
  for (Cell a : C.objects()) out.push_back(C.e(a));
  return out;
}

}  // namespace

FiniteOmegaCat pointed_sets(int max_size) {
  std::vector<std::string> objs;
  for (int n = 1; n <= max_size; ++n) objs.push_back("P" + std::to_string(n));
  auto fname = [&](int m, int n, const std::vector<int>& v) {
    bool ident = m == n;
    for (int k = 0; ident && k < m; ++k) ident = v[static_cast<std::size_t>(k)] == k;
    return ident ? "e(" + objs[m - 1] + ")" : objs[m - 1] + ">" + objs[n - 1] + join(v);
  };
  std::vector<ArrowSpec> arrows;
  std::map<std::string, std::tuple<int, int, std::vector<int>>> fn;
  for (int m = 1; m <= max_size; ++m)
    for (int n = 1; n <= max_size; ++n) {
      // v[0] = 0; the remaining m-1 values range over {0..n-1}.
      std::vector<int> v(static_cast<std::size_t>(m), 0);
      while (true) {
        std::string nm = fname(m, n, v);
        if (nm.rfind("e(", 0) != 0) {
          arrows.push_back({nm, objs[m - 1], objs[n - 1]});
          fn[nm] = {m, n, v};
        }
        int i = m - 1;
        while (i >= 1 && ++v[static_cast<std::size_t>(i)] == n) v[static_cast<std::size_t>(i--)] = 0;
        if (i < 1) break;
      }
    }
  return one_category("Ptd" + std::to_string(max_size), objs, arrows, [&](const std::string& g, const std::string& f) {
    const auto& [fm, fn_, fv] = fn.at(f);
    const auto& [gm, gn, gv] = fn.at(g);
    (void)fn_;
    (void)gm;
    std::vector<int> h;
    for (int x : fv) h.push_back(gv[static_cast<std::size_t>(x)]);
    return fname(fm, gn, h);
  });
}

FunctorData thin_functor(const std::string& name, const CatRef& source, const CatRef& target,
                         const std::map<std::string, std::string>& objects) {
  const FiniteOmegaCat &S = *source, &T = *target;
  FunctorData F{name, source, target, {}};
  F.map.resize(S.size());
  for (int deg = 0; deg <= S.top_degree(); ++deg)
    for (auto i : S.stored_of_degree(deg)) {
      if (deg == 0) {
        F.map[i] = T.at(objects.at(S.stored(i).name));
        continue;
      }
      const auto& s = S.stored(i);
      F.map[i] = unique_between(T, F.map[s.dom], F.map[s.cod]);
    }
  return F;
}

AdjunctionData thin_adjunction(const std::string& name, FunctorData F, FunctorData G) {
  AdjunctionData adj;
  adj.name = name;
  const FiniteOmegaCat &L = *F.source, &R = *F.target;
  for (Cell a : L.objects()) adj.eta.push_back(unique_between(L, a, G.apply(F.apply(a))));
  for (Cell b : R.objects()) adj.eps.push_back(unique_between(R, F.apply(G.apply(b)), b));
  adj.F = std::move(F);
  adj.G = std::move(G);
  return adj;
}

AdjunctionData identity_adjunction(const CatRef& cat) {
  AdjunctionData adj;
  adj.name = "Id⊣Id(" + cat->name() + ")";
  adj.F = identity_functor(cat);
  adj.G = identity_functor(cat);
  adj.eta = identities(*cat);
  adj.eps = adj.eta;
  return adj;
}

AdjunctionData galois_adjunction(bool two_dimensional) {
  CatRef chain3 = share(two_dimensional ? codiscrete2(chain(3)) : chain(3));
  CatRef dia = share(two_dimensional ? codiscrete2(diamond()) : diamond());
  auto F = thin_functor("F", chain3, dia, {{"0", "bot"}, {"1", "r"}, {"2", "top"}});
  auto G = thin_functor("G", dia, chain3, {{"bot", "0"}, {"l", "0"}, {"r", "1"}, {"top", "2"}});
  return thin_adjunction(two_dimensional ? "Galois⁼" : "Galois", std::move(F), std::move(G));
}

AdjunctionData terminal_adjunction() {
  CatRef sets = share(finset_sizes({0, 1, 2}));
  CatRef one = share(terminal());
  auto F = constant_functor(sets, one, one->at("*"));
  auto G = constant_functor(one, sets, sets->at("1"));
  return thin_adjunction("!⊣1", std::move(F), std::move(G));
}

std::vector<AdjunctionEntry> adjunctions() {
  std::vector<AdjunctionEntry> out;
  auto add = [&](AdjunctionData a) {
    std::string n = a.name;
    out.push_back({n, std::move(a)});
  };
  {
    auto a = identity_adjunction(share(cyclic(2)));
    add(std::move(a));
  }
  add(galois_adjunction(false));
  add(galois_adjunction(true));
  {
    auto dl = check_delta_lim_adjunction(share(diamond()), discrete_graph(2));
    if (!dl.delta_lim) throw std::logic_error("Diamond lacks binary meets");
    dl.delta_lim->name = "Δ⊣×(Diamond)";
    add(std::move(*dl.delta_lim));
  }
  add(terminal_adjunction());
  add(identity_adjunction(share(pseudo_iso())));
  return out;
}

LimitInstance terminal_limit() {
  CatRef c = share(chain(3));
  GraphData g;
  g.name = "∅";
  return {"terminal in Chain3", {g, c, {}}, {c->at("2"), {}, ConeKind::limit}};
}

LimitInstance diamond_meet() {
  CatRef c = share(diamond());
  DiagramData D{discrete_graph(2), c, {c->at("l"), c->at("r")}};
  return {"l×r in Diamond", D, {c->at("bot"), {c->at("bot<l"), c->at("bot<r")}, ConeKind::limit}};
}

LimitInstance binary_product_2cat() {
  CatRef c = share(codiscrete2(finset_sizes({0, 1, 2})));
  DiagramData D{discrete_graph(2), c, {c->at("1"), c->at("2")}};
  return {"1×2 in FinSet⁼", D, {c->at("2"), {c->at("2>1[0,0]"), c->at("e(2)")}, ConeKind::limit}};
}

LimitInstance two_cell_equalizer() {
  CatRef one = share(terminal());
  CatRef A = share(discrete(2));
  CatRef B = share(walking_arrow());
  auto fr = build_fragment(cat_fragment({one, A, B}, "∞-CAT[1,Disc2,Arrow]"));
  auto find = [&](const CatCell& x) {
    auto c = fr.find(cat_key(x));
    if (!c) throw std::logic_error("two_cell_equalizer: cell missing from the fragment");
    return *c;
  };
  auto functor = [](std::string name, const CatRef& s, const CatRef& t, const std::vector<std::string>& objs) {
    FunctorData F{std::move(name), s, t, {}};
    for (std::uint32_t i = 0; i < s->size(); ++i) {
      Cell src{i, 0};
      std::size_t k = s->object_index(s->degree(src) == 0 ? src : s->dom(src));
      Cell o = t->at(objs[k]);
      F.map.push_back(s->degree(src) == 0 ? o : t->e(o));
    }
    return F;
  };
  auto F = functor("F", A, B, {"a", "a"});
  auto G = functor("G", A, B, {"a", "b"});
  auto incl = functor("i", one, A, {"x0"});
  auto Fc = make_cell(F), Gc = make_cell(G);
  ModificationData alpha{"α", 0, Fc, Gc, {B->e(B->at("a")), B->at("f")}};
  auto Fi = make_cell(compose_functors(F, incl));
  auto L = std::make_shared<const FiniteOmegaCat>(fr.cat);
  GraphData g;
  g.name = "2-cell";
  int s = g.add("s"), t = g.add("t");
  int p = g.add("p", 1, s, t), q = g.add("q", 1, s, t);
  g.add("α", 2, p, q);
  DiagramData D{g, L, {find(make_cell(A)), find(make_cell(B)), find(Fc), find(Gc), find(make_cell(alpha))}};
  ConeData cone{find(make_cell(one)), {find(make_cell(incl)), find(Fi)}, ConeKind::limit};
  return {"equalizer of α: F ⇒ G", D, cone};
}

ConcreteDuality terminal_self_duality() {
  CatRef one = share(terminal());
  CatRef other = share(terminal());
  CatRef other_op = share(opposite(*other));
  AdjunctionData adj;
  adj.name = "1^op ≃ 1";
  adj.F = index_functor("Gd", one, other_op);
  adj.G = index_functor("Fd", other_op, one);
  adj.eta = identities(*one);
  adj.eps = identities(*other_op);
  auto U = std::make_shared<const CatValuedPresheaf>(representable(one, one->at("*")));
  auto V = std::make_shared<const CatValuedPresheaf>(representable(other, other->at("*")));
  return {adj, U, V, one->at("*"), other->at("*")};
}

ConcreteDuality pointed_self_duality() {
  CatRef L = share(pointed_sets(3));
  CatRef Lop = share(opposite(*L));
  CatRef Lopop = share(opposite(*Lop));
  AdjunctionData adj;
  adj.name = "Ptd3^op ≃ Ptd3^op";
  adj.F = index_functor("Gd", L, Lopop);
  adj.G = index_functor("Fd", Lopop, L);
  adj.eta = identities(*L);
  adj.eps = identities(*Lopop);
  auto U = std::make_shared<const CatValuedPresheaf>(representable(L, L->at("P2")));
  auto V = std::make_shared<const CatValuedPresheaf>(representable(Lop, Lop->at("P2")));
  return {adj, U, V, L->at("P2"), Lop->at("P2")};
}

ConcreteDuality stone_duality() {
  CatRef sets = share(finset_sizes({0, 1, 2}));
  CatRef bools = share(finbool());
  CatRef bools_op = share(opposite(*bools));
  const std::vector<std::string> algebra{"B1", "B2", "B4"};
  // A function i → j with values v goes to preimage B(2^j) → B(2^i), which
  // FinBool names by v itself.
  auto to_bool = [&](const std::string& nm) {
    if (nm.rfind("e(", 0) == 0) return "e(" + algebra.at(std::stoul(nm.substr(2))) + ")";
    if (nm.find('>') == std::string::npos) return algebra.at(std::stoul(nm));
    auto gt = nm.find('>'), br = nm.find('[');
    auto i = std::stoul(nm.substr(0, gt)), j = std::stoul(nm.substr(gt + 1, br - gt - 1));
    return algebra.at(j) + ">" + algebra.at(i) + nm.substr(br);
  };
  auto atoms = [&](const std::string& b) {
    for (std::size_t k = 0; k < algebra.size(); ++k)
      if (algebra[k] == b) return std::to_string(k);
    throw std::logic_error("stone_duality: unknown algebra " + b);
  };
  auto to_set = [&](const std::string& nm) {
    if (nm.rfind("e(", 0) == 0) return "e(" + atoms(nm.substr(2, nm.size() - 3)) + ")";
    if (nm.find('>') == std::string::npos) return atoms(nm);
    auto gt = nm.find('>'), br = nm.find('[');
    return atoms(nm.substr(gt + 1, br - gt - 1)) + ">" + atoms(nm.substr(0, gt)) + nm.substr(br);
  };
  AdjunctionData adj;
  adj.name = "FinSet^op ≃ FinBool";
  adj.F = FunctorData{"Gd", sets, bools_op, {}};
  for (std::uint32_t i = 0; i < sets->size(); ++i) adj.F.map.push_back(bools_op->at(to_bool(sets->stored(i).name)));
  adj.G = FunctorData{"Fd", bools_op, sets, {}};
  for (std::uint32_t i = 0; i < bools_op->size(); ++i) adj.G.map.push_back(sets->at(to_set(bools_op->stored(i).name)));
  adj.eta = identities(*sets);
  adj.eps = identities(*bools_op);
  auto U = std::make_shared<const CatValuedPresheaf>(representable(sets, sets->at("1")));
  auto V = std::make_shared<const CatValuedPresheaf>(representable(bools, bools->at("B4")));
  return {adj, U, V, sets->at("2"), bools->at("B2")};
}

}  // namespace ocat::corpus

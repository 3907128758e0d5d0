#include <doctest.h>

#include "ocat/corpus.hpp"
#include "ocat/limits.hpp"

using namespace ocat;
using namespace ocat::corpus;

namespace {

CatRef share(FiniteOmegaCat c) { return std::make_shared<const FiniteOmegaCat>(std::move(c)); }

bool strict_limit(const DiagramData& D, const ConeData& c) { return verify_strict_limit(D, c).fact_value("strict") == "true"; }

// φ by lookup in thin categories: the only cell F a → b of the same degree.
HomIsoFamily thin_phi(const AdjunctionData& adj) {
  const FiniteOmegaCat &L = *adj.left(), &R = *adj.right();
  HomIsoFamily phi;
  for (Cell a : L.objects())
    for (Cell b : R.objects()) {
      auto& t = phi.tables[{a, b}];
      for (Cell f : hom_cells(L, a, adj.G.apply(b))) {
        std::vector<Cell> same;
        for (Cell g : hom_cells(R, adj.F.apply(a), b))
          if (R.degree(g) == L.degree(f)) same.push_back(g);
        if (same.size() == 1) t[f] = same[0];
      }
    }
  return phi;
}

}  // namespace

TEST_CASE("graphs and diagrams") {
  GraphData g;
  int s = g.add("s"), t = g.add("t");
  int p = g.add("p", 1, s, t), q = g.add("q", 1, t, s);
  g.add("bad", 2, p, q);
  auto r = check_graph(g);
  CHECK(r.status("graph.grading") == Status::pass);
  CHECK(r.status("graph.globularity") == Status::fail);

  auto inst = corpus::diamond_meet();
  CHECK(check_diagram(inst.diagram).passed());
  auto broken = inst.diagram;
  broken.assignment[0] = inst.diagram.target->at("bot<l");
  CHECK(check_diagram(broken).status("diagram.degree") == Status::fail);
}

TEST_CASE("cones") {
  auto empty = corpus::terminal_limit();
  CHECK(check_cone(empty.diagram, empty.cone).passed());
  for (Cell v : empty.diagram.target->objects()) CHECK(check_cone(empty.diagram, ConeData{v, {}, ConeKind::limit}).passed());

  auto meet = corpus::diamond_meet();
  CHECK(check_cone(meet.diagram, meet.cone).passed());
  auto bad = meet.cone;
  bad.edges[1] = meet.diagram.target->at("bot<l");
  auto r = check_cone(meet.diagram, bad);
  REQUIRE(r.status("cone.edges") == Status::fail);
  CHECK(r.findings.at(0).witnesses.at(0) == "x1");

  auto eq = corpus::two_cell_equalizer();
  auto rc = check_cone(eq.diagram, eq.cone);
  CHECK(rc.passed());
  CHECK(rc.fact_value("strict") == "true");
}

TEST_CASE("strict limits from the examples") {
  auto term = corpus::terminal_limit();
  CHECK(strict_limit(term.diagram, term.cone));
  // Any other vertex of Chain3 is not terminal.
  CHECK_FALSE(strict_limit(term.diagram, ConeData{term.diagram.target->at("1"), {}, ConeKind::limit}));

  auto meet = corpus::diamond_meet();
  CHECK(strict_limit(meet.diagram, meet.cone));

  auto prod = corpus::binary_product_2cat();
  auto pr = verify_strict_limit(prod.diagram, prod.cone);
  CHECK(pr.fact_value("strict") == "true");
  // 2-cells into the vertex are the pairs of 2-cells into the factors: the
  // hom FinSet⁼(2, 2) has 4 arrows and 16 2-cells, the cone category at 2 has
  // 1·4 arrow pairs and 1·16 pairs of 2-cells.
  const FiniteOmegaCat& P = *prod.diagram.target;
  Cell two = P.at("2");
  CHECK(cone_families(prod.diagram, two, 0, ConeKind::limit).size() == 4);
  CHECK(cone_families(prod.diagram, two, 1, ConeKind::limit).size() == 16);

  auto eq = corpus::two_cell_equalizer();
  CHECK(strict_limit(eq.diagram, eq.cone));
  // Using x1 (where α is f, not an identity) is not even a cone.
  const FiniteOmegaCat& L = *eq.diagram.target;
  std::optional<Cell> x1;
  for (Cell f : L.arrows(eq.cone.vertex, eq.diagram.at(0)))
    if (f != eq.cone.edges[0]) x1 = f;
  REQUIRE(x1);
  auto wrong = eq.cone;
  wrong.edges[0] = *x1;
  CHECK(check_cone(eq.diagram, wrong).status("cone.naturality") == Status::fail);
}

TEST_CASE("weak only limits are told apart") {
  // In PseudoIso every hom category is codiscrete, hence equivalent to 1,
  // but End(a) = {e, u} is not a single arrow.
  CatRef c = share(pseudo_iso());
  GraphData g;
  g.name = "∅";
  DiagramData D{g, c, {}};
  auto r = verify_strict_limit(D, ConeData{c->at("a"), {}, ConeKind::limit});
  CHECK(r.fact_value("strict") == "false");
  CHECK(r.fact_value("weak") == "true");
  CHECK(r.status("limit.bijection") == Status::fail);
}

TEST_CASE("limit uniqueness and find_strict_limit") {
  CatRef c = share(corpus::finset_sizes({1, 2, 2}));
  DiagramData D{discrete_graph(2), c, {c->at("1"), c->at("2")}};
  ConeData first{c->at("2"), {c->at("2>1[0,0]"), c->at("e(2)")}, ConeKind::limit};
  ConeData second{c->at("2'"), {c->at("2'>1[0,0]"), c->at("2'>2[0,1]")}, ConeKind::limit};
  auto r = check_limit_uniqueness(D, first, second);
  CHECK(r.passed());
  auto found = find_strict_limit(D, ConeKind::limit);
  REQUIRE(found);
  CHECK(c->name_of(found->vertex) == "2");

  auto dia = share(diamond());
  DiagramData J{discrete_graph(2), dia, {dia->at("l"), dia->at("r")}};
  auto join = find_strict_limit(J, ConeKind::colimit);
  REQUIRE(join);
  CHECK(dia->name_of(join->vertex) == "top");
}

TEST_CASE("toy adjunctions verify in both styles") {
  for (const auto& [name, adj] : corpus::adjunctions()) {
    CAPTURE(name);
    auto uc = check_adjunction_unit_counit(adj);
    CHECK(uc.passed());
    CHECK(uc.fact_value("triangles") == "true");
    CHECK(uc.fact_value("phi_iso") == "true");
    auto kan = check_adjunction_kan(adj.F, adj.G, derive_phi(adj));
    CHECK(kan.passed());
    CHECK(kan.fact_value("strict") == "true");
    auto ue = check_universal_elements(adj);
    CHECK(ue.passed());
  }
}

TEST_CASE("derived φ matches the directly tabulated one") {
  for (bool two : {false, true}) {
    auto adj = corpus::galois_adjunction(two);
    auto direct = thin_phi(adj);
    auto derived = derive_phi(adj);
    CHECK(check_adjunction_kan(adj.F, adj.G, direct).passed());
    CHECK(direct.tables == derived.tables);
  }
  auto t = corpus::terminal_adjunction();
  CHECK(thin_phi(t).tables == derive_phi(t).tables);
}

TEST_CASE("mutations break both sides of the biconditional") {
  {
    auto adj = corpus::identity_adjunction(share(cyclic(2)));
    adj.eps[0] = adj.right()->at("g");  // still natural: Z2 is commutative
    auto r = check_adjunction_unit_counit(adj);
    CHECK(r.status("adj.counit") == Status::pass);
    CHECK(r.status("adj.triangle_F") == Status::fail);
    CHECK(r.status("adj.phi_inverse") == Status::fail);
    CHECK(r.fact_value("biconditional") == "true");
    CHECK(r.fact_value("triangles") == "false");
    CHECK(r.fact_value("phi_iso") == "false");
    // ε alone is still universal, matching the hom-iso it induces.
    auto ue = check_universal_elements(adj);
    CHECK(ue.status("universal.agree") == Status::pass);
  }
  {
    auto adj = corpus::identity_adjunction(share(pseudo_iso()));
    const auto& R = *adj.right();
    adj.eps = {R.at("u"), R.at("v")};
    auto r = check_adjunction_unit_counit(adj);
    CHECK(r.status("adj.counit") == Status::pass);
    CHECK(r.fact_value("triangles") == "false");
    CHECK(r.fact_value("phi_iso") == "false");
    CHECK(r.fact_value("biconditional") == "true");
  }
}

TEST_CASE("a non-natural bijection is reported by its square") {
  auto adj = corpus::identity_adjunction(share(cyclic(3)));
  const auto& Z = *adj.left();
  Cell s = Z.objects()[0];
  HomIsoFamily phi;
  auto& t = phi.tables[{s, s}];
  t[Z.e(s)] = Z.e(s);
  t[Z.at("g")] = Z.at("g^2");
  t[Z.at("g^2")] = Z.at("g");
  auto r = check_adjunction_kan(adj.F, adj.G, phi);
  CHECK(r.status("kan.iso") == Status::pass);
  REQUIRE(r.status("kan.natural") == Status::fail);
  bool found = false;
  for (const auto& f : r.findings)
    if (f.check == "kan.natural" && f.witnesses.at(0) == "(e(*),g)") found = true;
  CHECK(found);
}

TEST_CASE("universal elements detect a wrong choice") {
  // Right adjoint to FinSet → 1 must pick the terminal set; 2 has two
  // arrows out of 1, 0 has none out of 1.
  CatRef sets = share(corpus::finset_sizes({0, 1, 2}));
  CatRef one = share(terminal());
  for (const char* pick : {"2", "0"}) {
    CAPTURE(pick);
    AdjunctionData adj;
    adj.F = corpus::constant_functor(sets, one, one->at("*"));
    adj.G = corpus::constant_functor(one, sets, sets->at(pick));
    for (Cell a : sets->objects()) {
      auto xs = sets->arrows(a, sets->at(pick));
      adj.eta.push_back(xs.empty() ? sets->e(a) : xs[0]);
    }
    adj.eps = {one->e(one->at("*"))};
    auto r = check_universal_elements(adj);
    CHECK(r.status("universal.counit") == Status::fail);
  }
}

TEST_CASE("composite and uniqueness of adjoints") {
  auto g = corpus::galois_adjunction(false);
  // Diamond → 1 ⊣ top.
  CatRef one = share(terminal());
  auto toOne = corpus::constant_functor(g.right(), one, one->at("*"));
  auto top = corpus::constant_functor(one, g.right(), g.right()->at("top"));
  auto outer = corpus::thin_adjunction("!⊣top", toOne, top);
  REQUIRE(check_adjunction_unit_counit(outer).passed());
  auto comp = compose_adjunctions(g, outer);
  auto r = check_adjunction_unit_counit(comp);
  CHECK(r.passed());
  CHECK(comp.G.apply(one->at("*")) == g.left()->at("2"));

  // Iso → 1 has two right adjoints, picking a or b.
  CatRef iso = share(walking_iso());
  auto F = corpus::constant_functor(iso, one, one->at("*"));
  AdjunctionData first, second;
  for (auto [adj, pick] : {std::pair{&first, "a"}, std::pair{&second, "b"}}) {
    adj->name = std::string("!⊣") + pick;
    adj->F = F;
    adj->G = corpus::constant_functor(one, iso, iso->at(pick));
    for (Cell a : iso->objects()) adj->eta.push_back(iso->arrows(a, iso->at(pick)).at(0));
    adj->eps = {one->e(one->at("*"))};
  }
  auto u = check_adjoint_uniqueness(first, second);
  CHECK(u.passed());
  CHECK(u.fact_value("isomorphic") == "true");
}

TEST_CASE("Δ ⊣ lim and colim ⊣ Δ") {
  auto chain3 = share(chain(3));
  auto e = check_delta_lim_adjunction(chain3, GraphData{});
  CHECK(e.report.passed());
  REQUIRE(e.delta_lim);
  CHECK(e.delta_lim->G.apply(e.diagrams->objects()[0]) == chain3->at("2"));
  REQUIRE(e.colim_delta);
  CHECK(e.colim_delta->F.apply(e.diagrams->objects()[0]) == chain3->at("0"));

  for (auto cat : {share(diamond()), chain3, share(codiscrete2(diamond()))}) {
    CAPTURE(cat->name());
    auto d = check_delta_lim_adjunction(cat, discrete_graph(2));
    CHECK(d.report.passed());
    CHECK(d.report.fact_value("delta_lim.strict") == "true");
    CHECK(d.report.fact_value("colim_delta.strict") == "true");
  }
  // FinSet{0,1,2} lacks 2 × 2.
  auto sets = share(corpus::finset_sizes({0, 1, 2}));
  auto m = check_delta_lim_adjunction(sets, discrete_graph(2));
  CHECK(m.report.status("delta_lim.exists") == Status::fail);
}

TEST_CASE("right adjoints carry limit cones to limit cones") {
  auto g = corpus::galois_adjunction(false);
  auto meet = corpus::diamond_meet();
  meet.diagram.target = g.right();
  meet.diagram.assignment = {g.right()->at("l"), g.right()->at("r")};
  meet.cone = {g.right()->at("bot"), {g.right()->at("bot<l"), g.right()->at("bot<r")}, ConeKind::limit};
  auto r = check_preserves_limit(g.G, meet.diagram, meet.cone);
  CHECK(r.passed());
  // F keeps the terminal object: F(2) = top.
  GraphData none;
  DiagramData E{none, g.left(), {}};
  auto term = check_preserves_limit(g.F, E, ConeData{g.left()->at("2"), {}, ConeKind::limit});
  CHECK(term.status("preserve.image") == Status::pass);

  auto dl = check_delta_lim_adjunction(share(diamond()), discrete_graph(2));
  REQUIRE(dl.delta_lim);
  // lim: Diamond² → Diamond is a right adjoint; the product (l,top)×(r,top)
  // = (bot,top) in Diamond² maps to bot ∧ top.
  const FiniteOmegaCat& D2 = *dl.diagrams;
  DiagramData P{discrete_graph(2), dl.diagrams, {D2.at("(l,top)"), D2.at("(r,top)")}};
  auto found = find_strict_limit(P, ConeKind::limit);
  REQUIRE(found);
  CHECK(D2.name_of(found->vertex) == "(bot,top)");
  CHECK(check_preserves_limit(dl.delta_lim->G, P, *found).passed());
}

TEST_CASE("concrete dualities") {
  auto t = corpus::terminal_self_duality();
  CHECK(check_concrete_duality(t).passed());

  auto p = corpus::pointed_self_duality();
  auto pr = check_concrete_duality(p);
  CHECK(pr.passed());
  auto pf = check_representable_forgetfuls(p, p.U->base->at("P2"), p.V->base->at("P2"));
  CHECK(pf.passed());

  auto s = corpus::stone_duality();
  auto sr = check_concrete_duality(s);
  CHECK(sr.passed());
  CHECK(sr.fact_value("duality.lift_G.strict") == "true");
  auto sf = check_representable_forgetfuls(s, s.U->base->at("1"), s.V->base->at("B4"));
  CHECK(sf.passed());
  CHECK(sf.fact_value("A_tilde") == "2");
  CHECK(sf.fact_value("B_tilde") == "B2");

  auto wrong = s;
  wrong.A_tilde = s.U->base->at("1");
  auto wr = check_concrete_duality(wrong);
  CHECK(wr.status("duality.underlying") == Status::fail);
  CHECK(wr.status("duality.lift_G") == Status::fail);
}

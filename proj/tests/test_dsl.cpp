#include <doctest.h>

#include "ocat/corpus.hpp"
#include "ocat/dsl.hpp"

using namespace ocat;
using namespace ocat::dsl;

namespace {

const char* kSample = R"txt(# a walking arrow, its opposite and some structure on top
category Arrow max_degree 1 {
  cell a : 0
  cell b : 0
  cell f : 1 a -> b
  derive
}
category Op = opposite Arrow
category One max_degree 1 { cell "*" : 0  derive }
functor Pick : One -> Arrow { map "*" => b }
functor Bang : Arrow -> One { map a => "*" map b => "*" map f => "e(*)" }
functor Id : Arrow -> Arrow { map a => a map b => b map f => f }
functor Collapse : Arrow -> Arrow { map a => a map b => a map f => "e(a)" }
modification Alpha level 0 : Collapse => Id { at a = "e(a)" at b = f }
graph Two { node p : 0 node q : 0 }
diagram D : Two -> Arrow { map p => b map q => b }
cone C : D at b { edge p = "e(b)" edge q = "e(b)" }
adjunction Adj : Bang -| Pick { unit a = f unit b = "e(b)" counit "*" = "e(*)" }
presheaf H = hom Arrow a
presheaf K = hom_op Arrow b
presheaf T on Arrow { at a = One at b = One at f = "Id1" }
)txt";

}  // namespace

TEST_CASE("names quote only when needed") {
  CHECK(quote_name("a") == "a");
  CHECK(quote_name("g'") == "g'");
  CHECK(quote_name("e(x)") == "\"e(x)\"");
  CHECK(quote_name("cell") == "\"cell\"");
  CHECK(quote_name("a\"b\\") == "\"a\\\"b\\\\\"");
  auto p = parse("category \"a\\\"b\\\\\" max_degree 0 { }");
  CHECK(std::get<CategoryDecl>(p.decls[0]).name.name == "a\"b\\");
}

TEST_CASE("terminal parses to one object and its identity") {
  auto ws = resolve(parse("category T max_degree 1 { cell \"*\" : 0 derive }"));
  const auto& T = *ws.category("T");
  CHECK(T.objects().size() == 1);
  CHECK(T.cells_of_degree(1).size() == 1);
  CHECK(validate_category(T, false).passed());
  CHECK(T == corpus::terminal());
}

TEST_CASE("errors carry positions") {
  auto fails_at = [](const std::string& src, int line, int col) {
    try {
      resolve(parse(src));
    } catch (const DslError& e) {
      CHECK(e.where.line == line);
      CHECK(e.where.col == col);
      return;
    }
    FAIL("no error for: " << src);
  };
  fails_at("category C max_degree 1 {\n  cell a : 0\n  cell f : 1 a -> z\n}", 3, 19);
  fails_at("category C max_degree 1 { cell a : 0 cell a : 0 }", 1, 43);
  fails_at("category C max_degree 1 { cell a : 2 }", 1, 32);
  fails_at("category C max_degree 1 {\n  cel a : 0 }", 2, 3);
  fails_at("functor F : X -> Y { }", 1, 13);
  fails_at("category C max_degree 1 { cell a : 0 }\ncategory C max_degree 0 { }", 2, 10);
  fails_at("category C max_degree 1 { cell \"a : 0 }", 1, 32);
  fails_at("category C max_degree 1 { cell a : 0 } @", 1, 40);
  fails_at("category C max_degree 1 { cell a : 0 }\nfunctor F : C -> C { }", 2, 9);
  CHECK_THROWS_WITH_AS(parse("category"), "1:9: expected a name, found end of input", DslError);
}

TEST_CASE("every declaration kind resolves") {
  auto p = parse(std::string(kSample) + "functor Id1 : One -> One { map \"*\" => \"*\" }\n");
  // Id1 is declared after T, so the presheaf must fail to resolve.
  CHECK_THROWS_AS(resolve(p), DslError);

  std::string fixed = kSample;
  fixed.insert(fixed.find("presheaf T"), "functor Id1 : One -> One { map \"*\" => \"*\" }\n");
  auto ws = resolve(parse(fixed));
  CHECK(ws.order.size() == 16);
  CHECK(ws.category("Op")->name() == "Op");
  CHECK(*ws.category("Op")->find("f") == *ws.category("Arrow")->find("f"));
  CHECK(check_functor(ws.functors.at("Pick"), Strictness::strict).passed());
  CHECK(check_functor(ws.functors.at("Bang"), Strictness::strict).passed());
  CHECK(check_modification(ws.modifications.at("Alpha")->modification()).passed());
  const auto& [D, C] = ws.cones.at("C");
  CHECK(check_cone(D, C).passed());
  CHECK(check_adjunction_unit_counit(ws.adjunctions.at("Adj")).passed());
  CHECK(check_presheaf(*ws.presheaves.at("H")).passed());
  CHECK(check_presheaf(*ws.presheaves.at("K")).passed());
  CHECK(check_presheaf(*ws.presheaves.at("T")).passed());
  // Unmapped identities are derived.
  const auto& pick = ws.functors.at("Pick");
  CHECK(pick.target->name_of(pick.map[1]) == "e(b)");
  CHECK(print(parse(print(parse(fixed)))) == print(parse(fixed)));
}

TEST_CASE("corpus categories round-trip through the text form") {
  for (const auto& [name, cat] : corpus::categories()) {
    CAPTURE(name);
    CategoryDecl d = category_decl(*cat);
    Presentation p{{d}};
    std::string text = print(p);
    Presentation back = parse(text);
    CHECK(back == p);
    CHECK(print(back) == text);
    auto ws = resolve(back);
    CHECK(*ws.category(cat->name()) == *cat);
  }
}

TEST_CASE("functors round-trip") {
  auto adj = corpus::galois_adjunction();
  Presentation p;
  p.decls.push_back(category_decl(*adj.left(), "L"));
  p.decls.push_back(category_decl(*adj.right(), "R"));
  p.decls.push_back(functor_decl(adj.F, "F", "L", "R"));
  p.decls.push_back(functor_decl(adj.G, "G", "R", "L"));
  auto ws = resolve(parse(print(p)));
  CHECK(ws.functors.at("F").map == adj.F.map);
  CHECK(ws.functors.at("G").map == adj.G.map);
}

TEST_CASE("exported corpus values resolve to equivalent values") {
  SUBCASE("presheaves") {
    for (const auto& e : corpus::presheaves()) {
      CAPTURE(e.name);
      Exporter ex;
      auto name = ex.presheaf(e.presheaf);
      auto ws = resolve(parse(print(ex.presentation())));
      const auto& P = ws.presheaves.at(name);
      CHECK(*P->base == *e.presheaf->base);
      CHECK(check_presheaf(*P) == check_presheaf(*e.presheaf));
      Cell a = P->base->objects().front();
      CHECK(yoneda_check(P->base, a, P) == yoneda_check(e.presheaf->base, a, e.presheaf));
    }
  }
  SUBCASE("adjunctions") {
    for (const auto& e : corpus::adjunctions()) {
      CAPTURE(e.name);
      Exporter ex;
      auto name = ex.adjunction(e.adjunction);
      auto ws = resolve(parse(print(ex.presentation())));
      const auto& A = ws.adjunctions.at(name);
      CHECK(A.F.map == e.adjunction.F.map);
      CHECK(A.eta == e.adjunction.eta);
      CHECK(A.eps == e.adjunction.eps);
      auto mine = check_adjunction_unit_counit(A), theirs = check_adjunction_unit_counit(e.adjunction);
      CHECK(mine.checks == theirs.checks);
      CHECK(mine.facts == theirs.facts);
    }
  }
  SUBCASE("limits") {
    for (const auto& inst : {corpus::terminal_limit(), corpus::diamond_meet(), corpus::binary_product_2cat(),
                             corpus::two_cell_equalizer()}) {
      CAPTURE(inst.name);
      Exporter ex;
      auto name = ex.cone(inst.diagram, inst.cone);
      auto ws = resolve(parse(print(ex.presentation())));
      const auto& [D, C] = ws.cones.at(name);
      CHECK(D.assignment == inst.diagram.assignment);
      CHECK(C.edges == inst.cone.edges);
      CHECK(verify_strict_limit(D, C).fact_value("strict") == "true");
    }
  }
  SUBCASE("dualities") {
    for (const auto& dual : {corpus::terminal_self_duality(), corpus::pointed_self_duality()}) {
      Exporter ex;
      auto name = ex.duality(dual);
      auto ws = resolve(parse(print(ex.presentation())));
      auto mine = check_concrete_duality(ws.dualities.at(name));
      CHECK(mine.passed());
      CHECK(mine.checks == check_concrete_duality(dual).checks);
    }
  }
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "cli.hpp"
#include "ocat/corpus.hpp"
#include "ocat/linalg.hpp"
#include "ocat/report_json.hpp"
#include "oracles.hpp"

using namespace ocat;

namespace {

CatRef share(FiniteOmegaCat c) { return std::make_shared<const FiniteOmegaCat>(std::move(c)); }

}  // namespace

// ---- linear algebra -----------------------------------------------------

TEST_CASE("rationals parse and print") {
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(parse_rational("7") == 7);
  CHECK(to_string(parse_rational("3/6") * -1) == "-1/2");
  CHECK(parse_rational(" 4 ") == 4);
  CHECK(to_string(Rational(0)) == "0");
  for (const char* junk : {"", "1/0", "x", "1/2/3", "2/-3", "--1"}) CHECK_THROWS_AS(parse_rational(junk), std::invalid_argument);
}

TEST_CASE("rank agrees with the fraction-free oracle") {
  std::mt19937 gen(20261017);
  std::uniform_int_distribution<int> entry(-3, 3), den(1, 4), size(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = static_cast<std::size_t>(size(gen)), c = static_cast<std::size_t>(size(gen));
    QMatrix m(r, c);
    oracle::Matrix o = oracle::zeros(r, c);
    // Sparse rows keep low ranks common.
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (gen() % 3 == 0) o[i][j] = m(i, j) = Rational(entry(gen), den(gen));
    CHECK(rank(m) == oracle::minor_rank(o));
    CHECK(kernel(m).dim() + rank(m) == c);
    CHECK(image(m).dim() == rank(m));
  }
}

TEST_CASE("subspace operations") {
  auto xy = Subspace::span(QMatrix::from_rows({{1, 0, 0}, {0, 1, 0}}, 3));
  auto yz = Subspace::span(QMatrix::from_rows({{0, 1, 1}, {0, 0, 1}}, 3));
  CHECK(intersect(xy, yz).dim() == 1);
  CHECK(sum(xy, yz) == Subspace::full(3));
  CHECK(intersect(xy, yz).contains(std::vector<Rational>{0, 5, 0}));
  CHECK(quotient_dim(intersect(xy, yz), xy) == 1);
  CHECK(xy.annihilator().dim() == 1);
  auto m = QMatrix::from_rows({{1, 2}, {3, 4}}, 2);
  auto x = solve(m, {5, 6});
  REQUIRE(x);
  CHECK(m.apply(*x) == std::vector<Rational>{5, 6});
  CHECK_FALSE(solve(QMatrix::from_rows({{1, 1}, {1, 1}}, 2), {1, 2}));
  CHECK_THROWS_AS(m * QMatrix(3, 1), DimensionError);
}

// ---- categories ---------------------------------------------------------

TEST_CASE("constructions on tables") {
  auto iso = corpus::walking_iso();
  auto op = opposite(iso);
  CHECK(op.dom(op.at("f")) == op.at("b"));
  CHECK(opposite(op) == iso);
  CHECK(validate_category(op, false).passed());

  // a ∼ b collapses to one object.
  auto t = truncate(iso, 0);
  CHECK(t.objects().size() == 1);
  CHECK(validate_category(t, false).passed());

  auto chain3 = corpus::chain(3);
  auto h = hom_set(chain3, chain3.at("0"), chain3.at("2"));
  CHECK(h.objects().size() == 1);

  auto arrow = corpus::walking_arrow();
  auto sq = product(arrow, arrow);
  CHECK(sq.objects().size() == 4);
  CHECK(validate_category(sq, false).passed());
  auto two = coproduct(arrow, arrow);
  CHECK(two.size() == 2 * arrow.size());
  CHECK(two.find("f'").has_value());

  auto raised = raise_top_degree(iso, 3);
  CHECK(raised.top_degree() == 3);
  CHECK(validate_category(raised, false).passed());
  CHECK(check_one_categories(raised).passed());
}

TEST_CASE("validation names the broken clause") {
  auto iso = corpus::walking_iso();
  auto gf = *iso.raw_compose(1, iso.at("g").base, iso.at("f").base);
  SUBCASE("missing composite") {
    iso.set_compose(1, iso.at("g").base, iso.at("f").base, kNone);
    CHECK(validate_category(iso, false).failed_checks() == std::vector<std::string>{clause::composability});
  }
  SUBCASE("entry on a non-composable pair") {
    iso.set_compose(1, iso.at("f").base, iso.at("f").base, gf);
    CHECK(validate_category(iso, false).status(clause::composability) == Status::fail);
  }
  SUBCASE("identity with the wrong boundary") {
    iso.set_identity(iso.at("a").base, iso.at("f").base);
    CHECK(validate_category(iso, false).status(clause::identity) == Status::fail);
  }
  SUBCASE("dangling reference") {
    iso.set_boundary(iso.at("f").base, iso.at("a").base, 99);
    CHECK_THROWS_AS(iso.check_references(), StructuralError);
  }
}

// ---- equivalence --------------------------------------------------------

TEST_CASE("equivalence witnesses and classification") {
  auto iso = corpus::walking_iso();
  EquivalenceEngine eng(iso);
  auto w = eng.witness(iso.at("a"), iso.at("b"));
  REQUIRE(w);
  CHECK(eng.replay(*w));
  CHECK(iso.name_of(w->forward) == "f");

  auto arrow = corpus::walking_arrow();
  CHECK_FALSE(are_equivalent(arrow, arrow.at("a"), arrow.at("b")));
  auto c = classify_arrow(arrow, arrow.at("f"));
  CHECK(c.monic);
  CHECK(c.epic);
  CHECK_FALSE(c.equivalence);
  CHECK(category_degree(corpus::discrete(2)) == 0);
  CHECK(category_degree(corpus::pseudo_iso()) == 2);

  // In the split idempotent g∘f = u ≠ e(a), so f is monic only if u is.
  auto split = corpus::split_idempotent();
  CHECK_FALSE(classify_arrow(split, split.at("f")).equivalence);

  auto classes = equivalence_classes(eng, iso.objects());
  CHECK(classes.size() == 1);
}

TEST_CASE("homotopy groups") {
  auto sz2 = corpus::suspension(corpus::cyclic(2));
  Cell s = sz2.objects()[0];
  auto pi1 = homotopy_group(sz2, s, s, sz2.e(s), 1);
  CHECK(pi1.report.passed());
  CHECK(pi1.order() == 2);
  REQUIRE(pi1.unit_class >= 0);
  for (std::size_t i = 0; i < pi1.order(); ++i) CHECK(pi1.op[static_cast<std::size_t>(pi1.unit_class)][i] == int(i));

  auto z3 = corpus::cyclic(3);
  Cell z = z3.objects()[0];
  auto pi0 = homotopy_group(z3, z, z, z3.e(z), 0);
  CHECK(pi0.pointed_set());
  CHECK(pi0.order() == 3);
}

// ---- functors -----------------------------------------------------------

TEST_CASE("functor enumeration and checks") {
  auto arrow = share(corpus::walking_arrow());
  auto iso = share(corpus::walking_iso());
  auto z2 = share(corpus::cyclic(2));
  CHECK(enumerate_functors(arrow, arrow).size() == 3);  // identity and two constants
  CHECK(enumerate_functors(arrow, iso).size() == 4);    // one per object assignment
  CHECK(enumerate_functors(z2, z2).size() == 2);

  auto id = identity_functor(arrow);
  CHECK(check_functor(id, Strictness::strict).passed());
  CHECK(check_equiv_preservation(id).passed());
  auto bad = id;
  bad.map[arrow->at("f").base] = arrow->e(arrow->at("a"));
  CHECK_FALSE(check_functor(bad, Strictness::strict).passed());

  // Z2 is commutative, so both elements are natural endo-transformations of 1.
  auto idz = make_cell(identity_functor(z2));
  auto mods = enumerate_modifications(idz, idz);
  CHECK(mods.size() == 2);
  for (const auto& m : mods) CHECK(check_modification(m).passed());

  auto F = compose_functors(id, id);
  CHECK(F.map == id.map);
}

// ---- report documents ---------------------------------------------------

TEST_CASE("reports survive a JSON round trip") {
  CheckReport r;
  r.subject = "sample";
  r.pass("a");
  r.fail("b", "went wrong", {"x", "e(x)"});
  r.skip("c");
  r.fact("k", "v");
  auto j = report_to_json(r);
  CHECK(j["passed"] == false);
  CHECK(report_from_json(j) == r);

  Document d{{"check-category", "x.ocat"}, {r}, Json::object(), false};
  d.data["n"] = 3;
  auto dj = document_to_json(d);
  CHECK(dj["verdict"] == "fail");
  CHECK(document_from_json(dj) == d);
  auto keys = std::vector<std::string>{};
  for (auto it = dj.begin(); it != dj.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"tool", "schema", "version", "command", "verdict", "reports", "data"});

  auto lie = j;
  lie["passed"] = true;
  CHECK_THROWS_AS(report_from_json(lie), std::invalid_argument);
  auto future = dj;
  future["schema"] = 99;
  CHECK_THROWS_AS(document_from_json(future), std::invalid_argument);
}

// ---- command line, in process -------------------------------------------

TEST_CASE("exit codes") {
  auto dir = std::filesystem::temp_directory_path() / "ocat-unit-cli";
  std::filesystem::create_directories(dir);
  auto file = (dir / "arrow.ocat").string();
  std::ofstream(file) << "category Arrow max_degree 1 { cell a : 0 cell b : 0 cell f : 1 a -> b derive }\n";

  CHECK(cli::run({"check-category", file}).code == cli::kPass);
  auto no = cli::run({"equiv", file, "a", "b"});
  CHECK(no.code == cli::kNegative);
  CHECK(Json::parse(no.out)["verdict"] == "fail");
  auto missing = cli::run({"equiv", file, "a", "zz"});
  CHECK(missing.code == cli::kInputError);
  CHECK(Json::parse(missing.out)["verdict"] == "error");
  CHECK(cli::run({"no-such-command"}).code == cli::kInputError);
  CHECK(cli::run({"check-category", (dir / "absent.ocat").string()}).code == cli::kInputError);
  auto printed = cli::run({"print", file});
  CHECK(printed.code == cli::kPass);
  CHECK(printed.out.find("category Arrow max_degree 1") == 0);
  std::filesystem::remove_all(dir);
}

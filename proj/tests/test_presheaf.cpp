#include "doctest.h"
#include "ocat/corpus.hpp"
#include "ocat/presheaf.hpp"

using namespace ocat;

namespace {
CatRef share(FiniteOmegaCat c) { return std::make_shared<const FiniteOmegaCat>(std::move(c)); }
}  // namespace

TEST_CASE("presheaf corpus entries are valid presheaves") {
  for (const auto& e : corpus::presheaves()) {
    CAPTURE(e.name);
    auto rep = check_presheaf(*e.presheaf);
    CHECK_MESSAGE(rep.passed(), rep.failed_checks().size());
  }
}

TEST_CASE("yoneda over the presheaf corpus") {
  for (const auto& e : corpus::presheaves()) {
    CAPTURE(e.name);
    const auto& F = e.presheaf;
    for (Cell a : F->base->objects()) {
      CAPTURE(F->base->name_of(a));
      auto rep = yoneda_check(F->base, a, F);
      for (const auto& f : rep.findings) MESSAGE(f.check << ": " << f.message);
      CHECK(rep.passed());
    }
  }
}

namespace {
PresheafRef sp(CatValuedPresheaf p) { return std::make_shared<const CatValuedPresheaf>(std::move(p)); }

// Oracle for strict-form counts: every tuple of strict component functors,
// kept when the independent checker accepts it with strict squares.
std::size_t brute_force_level0(const PresheafRef& P, const PresheafRef& Q) {
  auto objs = P->base->objects();
  std::vector<std::vector<CatCell>> cands;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    cands.emplace_back();
    for (auto& f : enumerate_functors(P->objects[i]->category(), Q->objects[i]->category()))
      cands.back().push_back(make_cell(f));
  }
  std::size_t total = 0;
  std::vector<std::size_t> pos(objs.size(), 0);
  while (true) {
    bool empty = false;
    for (auto& c : cands) empty = empty || c.empty();
    if (empty) return 0;
    PresheafModification m;
    m.source = P;
    m.target = Q;
    for (std::size_t i = 0; i < objs.size(); ++i) m.components.push_back(cands[i][pos[i]]);
    auto rep = check_presheaf_modification(m);
    if (rep.passed() && rep.fact_value("strict") == "true") ++total;
    std::size_t i = 0;
    while (i < objs.size() && ++pos[i] == cands[i].size()) pos[i++] = 0;
    if (i == objs.size()) break;
  }
  return total;
}
}  // namespace

TEST_CASE("evaluate: identities, μ action, constants") {
  auto L = share(corpus::walking_iso());
  auto Y = hom_functor(L, L->at("a"), Variance::covariant);
  CHECK(approx(Y.at(L->at("e(a)")), cat_identity(Y.at(L->at("a"))), 1));
  // Action of f on L(a,a): g ↦ f ∗ g.
  auto Yf = Y.at(L->at("f"));
  std::vector<std::uint32_t> ra, rb;
  hom_set(*L, L->at("a"), L->at("a"), &ra);
  hom_set(*L, L->at("a"), L->at("b"), &rb);
  const auto& H = *Yf->functor().source;
  for (std::uint32_t i = 0; i < H.size(); ++i) {
    Cell g = from_hom_cell(*L, L->at("a"), L->at("a"), ra, {i, 0});
    Cell want = to_hom_cell(*L, L->at("a"), L->at("b"), rb, star(*L, L->at("f"), g));
    CHECK(Yf->functor().apply({i, 0}) == want);
  }
  auto T = share(corpus::terminal());
  auto C = constant_presheaf(L, share(corpus::walking_arrow()));
  for (std::uint32_t i = 0; i < L->size(); ++i) {
    if (L->stored(i).degree == 0) continue;
    auto v = C.at({i, 0});
    CHECK(same_cell(v, cat_identity(C.at(L->dom({i, 0})))));
  }
}

TEST_CASE("enumerate presheaf modifications") {
  auto L = share(corpus::chain(3));
  auto T = share(corpus::terminal());
  auto K = sp(constant_presheaf(L, T));
  for (int n = 0; n <= 2; ++n) CHECK(enumerate_presheaf_modifications(K, K, n).size() == 1);
  // Empty base: one empty modification.
  auto E = share(FiniteOmegaCat("∅", 1));
  auto KE = sp(constant_presheaf(E, T));
  auto mods = enumerate_presheaf_modifications(KE, KE, 0);
  REQUIRE(mods.size() == 1);
  CHECK(mods[0]->components.empty());
  // L(−,a) → L(−,a) at level n: cells of L(a,a) of degree n.
  auto I = share(corpus::codiscrete2(corpus::walking_iso()));
  Cell a = I->at("a");
  auto Y = sp(hom_functor(I, a, Variance::contravariant));
  auto Laa = hom_set(*I, a, a);
  for (int n = 0; n <= Laa.top_degree(); ++n)
    CHECK(enumerate_presheaf_modifications(Y, Y, n).size() == Laa.cells_of_degree(n).size());
}

TEST_CASE("yoneda counts on the chain toy match the brute-force oracle") {
  std::shared_ptr<const CatValuedPresheaf> toy;
  for (const auto& e : corpus::presheaves())
    if (e.name == "toy on Chain3^op") toy = e.presheaf;
  REQUIRE(toy);
  for (Cell a : toy->base->objects()) {
    auto Y = sp(representable(toy->base, a));
    std::size_t fast = enumerate_presheaf_modifications(Y, toy, 0).size();
    CHECK(fast == brute_force_level0(Y, toy));
    CHECK(fast == toy->fiber(a)->objects().size());
  }
}

TEST_CASE("yoneda: constant terminal presheaf has one modification per level") {
  auto L = share(corpus::walking_iso());
  auto op = share(opposite(*L));
  auto K = sp(constant_presheaf(op, share(corpus::terminal())));
  auto rep = yoneda_check(op, op->at("a"), K);
  CHECK(rep.passed());
  CHECK(rep.fact_value("count.0") == "1/1");
  CHECK(rep.fact_value("count.1") == "1/1");
}

TEST_CASE("representability: strict, weak only, neither") {
  auto L = share(corpus::walking_arrow());
  Cell a = L->at("a"), b = L->at("b");
  auto Ya = sp(hom_functor(L, a, Variance::contravariant));
  auto r = representability_check(Ya, a, Ya->fiber(a)->at("e(a)"));
  CHECK(r.strict);
  CHECK(r.weak);

  auto D = sp(presheaf_times(*Ya, share(corpus::walking_iso())));
  auto rd = representability_check(D, a, D->fiber(a)->at("(e(a),a)"));
  CHECK_FALSE(rd.strict);
  CHECK(rd.weak);
  CHECK(!rd.report.fact_value("strict_witness").empty());

  // L(−,b) with an extra object in the fiber over a.
  auto Yb = hom_functor(L, b, Variance::contravariant);
  CatValuedPresheaf M = Yb;
  M.name = "L(−,b)+1";
  const auto& base = *M.base;
  auto ia = base.object_index(a);
  auto bigger = share(coproduct(*Yb.fiber(a), corpus::terminal()));
  M.objects[ia] = make_cell(bigger);
  for (std::uint32_t i = 0; i < base.size(); ++i) {
    if (!M.cells[i] || !M.cells[i]->is_functor()) continue;
    FunctorData F = M.cells[i]->functor();
    bool into = base.cod({i, 0}) == a, from = base.dom({i, 0}) == a;
    if (into) F.target = bigger;
    if (from) F.source = bigger;
    if (from && into) F = identity_functor(bigger);
    else if (from) throw std::logic_error("unexpected arrow out of a");
    M.cells[i] = make_cell(F);
  }
  auto PM = sp(std::move(M));
  REQUIRE(check_presheaf(*PM).passed());
  auto rm = representability_check(PM, b, PM->fiber(b)->at("e(b)"));
  CHECK_FALSE(rm.strict);
  CHECK_FALSE(rm.weak);
  CHECK(rm.report.fact_value("strict_witness").find("no preimage") != std::string::npos);
}

TEST_CASE("yoneda embedding preserves and reflects ∼") {
  for (auto c : {corpus::discrete(2), corpus::walking_iso(), corpus::walking_arrow(), corpus::split_idempotent(),
                 corpus::pseudo_iso()}) {
    auto L = share(c);
    CAPTURE(L->name());
    auto rep = yoneda_embedding_check(L);
    for (const auto& f : rep.findings) MESSAGE(f.check << ": " << f.message);
    CHECK(rep.passed());
  }
}

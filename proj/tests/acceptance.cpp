// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: ocat_acceptance OCAT_BINARY CORPUS_DIR
//
// Reference values come either from the oracles in oracles.hpp, from small
// recomputations written here against the raw tables, or from the frozen
// constants below.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ocat/corpus.hpp"
#include "ocat/dsl.hpp"
#include "ocat/jetdiff.hpp"
#include "ocat/spencer.hpp"
#include "oracles.hpp"

using namespace ocat;
namespace fs = std::filesystem;

namespace {

CatRef share(FiniteOmegaCat c) { return std::make_shared<const FiniteOmegaCat>(std::move(c)); }

// Collects the sub-results of one criterion.
struct Tally {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

int g_failed = 0;

void report(int n, const std::string& title, const Tally& t, double seconds) {
  const bool ok = t.failures.empty();
  if (!ok) ++g_failed;
  std::printf("criterion %d: %s  %s (%.2fs)\n", n, ok ? "PASS" : "FAIL", title.c_str(), seconds);
  for (const auto& s : t.notes) std::printf("    %s\n", s.c_str());
  const std::size_t shown = std::min<std::size_t>(t.failures.size(), 12);
  for (std::size_t i = 0; i < shown; ++i) std::printf("    failed: %s\n", t.failures[i].c_str());
  if (t.failures.size() > shown) std::printf("    ... %zu more\n", t.failures.size() - shown);
  std::fflush(stdout);
}

template <class F>
void run_criterion(int n, const std::string& title, F body) {
  Tally t;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.failures.push_back(std::string("exception: ") + e.what());
  }
  report(n, title, t, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

// ---- 1. axiom mutations ---------------------------------------------------

// One object pair a → b with the 2-cells on f forming Z/3 under ∘1.
FiniteOmegaCat loop3() {
  CategoryBuilder b("Loop3", 2);
  b.cell("a", 0).cell("b", 0).cell("f", 1, "a", "b").auto_identities();
  b.cell("t", 2, "f", "f").cell("t2", 2, "f", "f");
  b.compose(1, "t", "t", "t2").compose(1, "t", "t2", "e(f)").compose(1, "t2", "t", "e(f)").compose(1, "t2", "t2", "t");
  b.derive_identity_composites();
  return b.build();
}

// A composite h = f ∘ g carrying an idempotent 2-cell s.
FiniteOmegaCat idempotent_on_composite() {
  CategoryBuilder b("Idem", 2);
  b.cell("a", 0).cell("b", 0).cell("c", 0).cell("g", 1, "a", "b").cell("f", 1, "b", "c").cell("h", 1, "a", "c");
  b.compose(1, "f", "g", "h").auto_identities();
  b.cell("s", 2, "h", "h").compose(1, "s", "s", "s");
  b.derive_identity_composites();
  return b.build();
}

struct Mutation {
  std::string base, description;
  FiniteOmegaCat cat;
};

// Every single-entry change of the boundary, identity and composition tables.
void for_each_mutation(const FiniteOmegaCat& b, const std::function<bool(Mutation&&)>& visit) {
  std::vector<std::uint32_t> cand;
  for (std::uint32_t i = 0; i < b.size(); ++i) cand.push_back(i);
  cand.push_back(kNone);
  auto nm = [&](std::uint32_t i) { return i == kNone ? std::string("none") : b.stored(i).name; };
  for (std::uint32_t x = 0; x < b.size(); ++x) {
    const auto& s = b.stored(x);
    for (auto d : cand)
      for (auto c : cand) {
        if (d == s.dom && c == s.cod) continue;
        FiniteOmegaCat m = b;
        try {
          m.set_boundary(x, d, c);
        } catch (const std::exception&) {
          continue;
        }
        if (visit({b.name(), "boundary of " + s.name + " := " + nm(d) + " -> " + nm(c), std::move(m)})) return;
      }
    for (auto e : cand) {
      if (e == s.identity) continue;
      FiniteOmegaCat m = b;
      try {
        m.set_identity(x, e);
      } catch (const std::exception&) {
        continue;
      }
      if (visit({b.name(), "e(" + s.name + ") := " + nm(e), std::move(m)})) return;
    }
  }
  for (int k = 1; k <= b.top_degree(); ++k)
    for (std::uint32_t f = 0; f < b.size(); ++f)
      for (std::uint32_t g = 0; g < b.size(); ++g) {
        if (b.stored(f).degree != b.stored(g).degree || b.stored(f).degree < k) continue;
        auto cur = b.raw_compose(k, f, g);
        for (auto h : cand) {
          if ((cur ? *cur : kNone) == h) continue;
          FiniteOmegaCat m = b;
          try {
            m.set_compose(k, f, g, h);
          } catch (const std::exception&) {
            continue;
          }
          auto what = nm(f) + " o" + std::to_string(k) + " " + nm(g) + " := " + nm(h);
          if (visit({b.name(), what, std::move(m)})) return;
        }
      }
}

void criterion_mutations(Tally& t) {
  std::vector<FiniteOmegaCat> bases{loop3(),
                                    idempotent_on_composite(),
                                    raise_top_degree(corpus::walking_iso(), 2),
                                    corpus::codiscrete2(corpus::walking_iso()),
                                    corpus::pseudo_iso(),
                                    corpus::suspension(corpus::cyclic(2)),
                                    raise_top_degree(corpus::chain(3), 2),
                                    corpus::codiscrete2(corpus::walking_arrow())};
  for (const auto& b : bases) {
    t.expect(b.top_degree() == 2, b.name() + " is not 2-truncated");
    t.expect(validate_category(b, false).passed(), "base " + b.name() + " does not pass");
  }
  std::vector<std::string> clauses = precategory_clauses();
  for (const auto& c : category_clauses()) clauses.push_back(c);
  std::map<std::string, std::string> isolated;
  std::size_t tried = 0, flagged = 0;
  for (const auto& b : bases)
    for_each_mutation(b, [&](Mutation&& m) {
      ++tried;
      std::vector<std::string> failed;
      try {
        failed = validate_category(m.cat, false).failed_checks();
      } catch (const std::exception& e) {
        failed = {std::string("exception: ") + e.what()};
      }
      if (!failed.empty()) ++flagged;
      if (failed.size() == 1 && !isolated.count(failed[0])) isolated[failed[0]] = m.base + ": " + m.description;
      return isolated.size() == clauses.size();
    });
  std::size_t found = 0;
  for (const auto& c : clauses) {
    auto it = isolated.find(c);
    if (it != isolated.end()) {
      ++found;
      t.notes.push_back(c + " isolated by " + it->second);
    } else {
      t.expect(false, c + ": no single-table mutation flags exactly this clause");
    }
  }
  t.notes.push_back(std::to_string(found) + "/" + std::to_string(clauses.size()) + " clauses isolated over " +
                    std::to_string(tried) + " mutations (" + std::to_string(flagged) + " flagged)");
  std::size_t clean = 0;
  for (const auto& [name, cat] : corpus::categories()) {
    auto r = validate_category(*cat, false);
    if (r.passed()) ++clean;
    else t.expect(false, "false positive on " + name);
  }
  t.notes.push_back("unmutated corpus: " + std::to_string(clean) + "/" + std::to_string(corpus::categories().size()) +
                    " pass");
  t.expect(corpus::categories().size() >= 10, "corpus has fewer than 10 categories");
}

// ---- 2. degrees -----------------------------------------------------------

// Witness depth by direct recursion over the tables: 0 for equal cells,
// otherwise one more than the worse of the two loop witnesses, minimised over
// arrow pairs. Above the top degree only equality counts.
std::optional<int> oracle_degree(const FiniteOmegaCat& cat, Cell x, Cell y) {
  if (x == y) return 0;
  if (cat.degree(x) >= cat.top_degree() || cat.degree(x) != cat.degree(y)) return std::nullopt;
  std::optional<int> best;
  for (Cell f : cat.arrows(x, y))
    for (Cell g : cat.arrows(y, x)) {
      auto gf = cat.compose(1, g, f), fg = cat.compose(1, f, g);
      if (!gf || !fg) continue;
      auto l = oracle_degree(cat, cat.e(x), *gf);
      if (!l) continue;
      auto r = oracle_degree(cat, *fg, cat.e(y));
      if (!r) continue;
      int d = 1 + std::max(*l, *r);
      if (!best || d < *best) best = d;
    }
  return best;
}

void criterion_degrees(Tally& t) {
  auto iso = corpus::walking_iso();
  auto pseudo = corpus::pseudo_iso();
  struct Case {
    const FiniteOmegaCat* cat;
    std::string x, y;
    int frozen;
  };
  for (const auto& c : {Case{&iso, "a", "a", 0}, Case{&iso, "a", "b", 1}, Case{&pseudo, "a", "b", 2}}) {
    Cell x = c.cat->at(c.x), y = c.cat->at(c.y);
    auto lib = pair_degree(*c.cat, x, y);
    auto orc = oracle_degree(*c.cat, x, y);
    std::string tag = c.cat->name() + " (" + c.x + "," + c.y + ")";
    t.expect(orc && *orc == c.frozen, tag + ": oracle disagrees with the frozen value");
    t.expect(lib && *lib == c.frozen, tag + ": library degree " + (lib ? std::to_string(*lib) : "none"));
    t.notes.push_back(tag + " -> " + (lib ? std::to_string(*lib) : "none"));
  }
  // The 2-mediated pair must not admit a strict inverse.
  t.expect(pseudo.compose(1, pseudo.at("g"), pseudo.at("f")) != pseudo.e(pseudo.at("a")), "PseudoIso is strict");
  // Sweep: every object pair in the corpus agrees with the oracle.
  std::size_t pairs = 0;
  for (const auto& [name, cat] : corpus::categories())
    for (Cell x : cat->objects())
      for (Cell y : cat->objects()) {
        ++pairs;
        auto lib = pair_degree(*cat, x, y);
        auto orc = oracle_degree(*cat, x, y);
        t.expect(lib == orc, name + " (" + cat->name_of(x) + "," + cat->name_of(y) + ") library and oracle differ");
      }
  t.notes.push_back(std::to_string(pairs) + " corpus object pairs agree with the oracle");
}

// ---- 3. lemma replays -----------------------------------------------------

// n objects with exactly one arrow between any ordered pair.
FiniteOmegaCat chaotic(int n) {
  CategoryBuilder b("Chaotic" + std::to_string(n), 1);
  auto ob = [](int i) { return "x" + std::to_string(i); };
  auto ar = [&](int i, int j) { return i == j ? "e(" + ob(i) + ")" : "p" + std::to_string(i) + std::to_string(j); };
  for (int i = 0; i < n; ++i) b.cell(ob(i), 0);
  b.auto_identities();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) b.cell(ar(i, j), 1, ob(i), ob(j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (i != j && j != k) b.compose(1, ar(j, k), ar(i, j), ar(i, k));
  b.derive_identity_composites();
  return b.build();
}

std::vector<CatRef> replay_categories() {
  std::vector<CatRef> out;
  for (const auto& e : corpus::categories()) out.push_back(e.cat);
  out.push_back(share(corpus::suspension(corpus::cyclic(3))));
  out.push_back(share(loop3()));
  out.push_back(share(idempotent_on_composite()));
  out.push_back(share(corpus::codiscrete2(corpus::split_idempotent())));
  out.push_back(share(chaotic(3)));
  out.push_back(share(corpus::codiscrete2(chaotic(3))));
  return out;
}

void criterion_lemmas(Tally& t) {
  auto cats = replay_categories();
  std::size_t trans = 0, unique = 0, endo = 0, mono = 0, epi = 0, eqv = 0, wit = 0, pres = 0, quasi = 0;

  for (const auto& cp : cats) {
    const FiniteOmegaCat& C = *cp;
    const std::string nm = C.name();
    if (!validate_category(C, false).passed()) {
      t.expect(false, nm + " fails validation, hypotheses not met");
      continue;
    }
    EquivalenceEngine eng(C);
    // Transitivity on distinct triples.
    for (int d = 0; d < C.top_degree(); ++d) {
      auto layer = C.cells_of_degree(d);
      for (Cell x : layer)
        for (Cell y : layer)
          for (Cell z : layer) {
            if (x == y || y == z || x == z) continue;
            if (!eng.equivalent(x, y) || !eng.equivalent(y, z)) continue;
            ++trans;
            auto w = eng.witness(x, z);
            t.expect(w && eng.replay(*w), nm + ": transitivity at " + C.name_of(x) + "," + C.name_of(z));
          }
    }
    // Quasi-inverses pairwise ∼, and witness arrows are equivalences.
    for (int d = 1; d <= C.top_degree(); ++d)
      for (Cell f : C.cells_of_degree(d)) {
        auto qs = eng.quasi_inverses(f);
        if (qs.size() >= 2) {
          ++unique;
          for (Cell g : qs)
            for (Cell h : qs) t.expect(eng.equivalent(g, h), nm + ": quasi-inverses of " + C.name_of(f) + " differ");
        }
      }
    for (int d = 0; d < C.top_degree(); ++d)
      for (Cell x : C.cells_of_degree(d))
        for (Cell y : C.cells_of_degree(d)) {
          if (x == y) continue;
          auto w = eng.witness(x, y);
          if (!w || w->by_equality()) continue;
          ++wit;
          t.expect(eng.is_equivalence_arrow(w->forward) && eng.is_equivalence_arrow(w->backward),
                   nm + ": witness arrows for " + C.name_of(x) + "," + C.name_of(y));
        }
    // End(eⁿ a): the n+1 composites of two endo-cells agree up to ∼.
    for (Cell a : C.objects())
      for (int n = 1; n < C.top_degree(); ++n) {
        Cell en = C.e(a, n);
        auto ends = C.arrows(en, en);
        for (Cell u : ends)
          for (Cell v : ends) {
            ++endo;
            std::vector<Cell> comps;
            for (int k = 1; k <= n + 1; ++k) {
              auto c = C.compose(k, u, v);
              t.expect(c.has_value(), nm + ": End composite o" + std::to_string(k) + " undefined");
              if (c) comps.push_back(*c);
            }
            for (Cell c : comps) t.expect(eng.equivalent(c, comps.front()), nm + ": End composites disagree");
          }
      }
    // Closure of monic, epic and equivalence arrows under ∘1.
    for (int d = 1; d <= C.top_degree(); ++d) {
      auto layer = C.cells_of_degree(d);
      std::map<Cell, ArrowClass> cls;
      for (Cell f : layer) cls[f] = classify_arrow(eng, f);
      for (Cell f : layer)
        for (Cell g : layer) {
          auto fg = C.compose(1, f, g);
          if (!fg) continue;
          ArrowClass c = classify_arrow(eng, *fg);
          if (cls[f].monic && cls[g].monic) {
            ++mono;
            t.expect(c.monic, nm + ": monic composite " + C.name_of(*fg));
          }
          if (cls[f].epic && cls[g].epic) {
            ++epi;
            t.expect(c.epic, nm + ": epic composite " + C.name_of(*fg));
          }
          if (cls[f].equivalence && cls[g].equivalence) {
            ++eqv;
            t.expect(c.equivalence, nm + ": equivalence composite " + C.name_of(*fg));
          }
        }
    }
  }

  // Strict functors preserve ∼; quasi-equal functors are equal.
  std::vector<std::pair<CatRef, CatRef>> pairs;
  auto iso = share(corpus::walking_iso()), arrow = share(corpus::walking_arrow()), z2 = share(corpus::cyclic(2));
  auto arrow2 = share(corpus::codiscrete2(corpus::walking_arrow())), iso2 = share(corpus::codiscrete2(corpus::walking_iso()));
  auto sz2 = share(corpus::suspension(corpus::cyclic(2)));
  pairs = {{arrow, iso}, {iso, iso}, {z2, iso}, {arrow2, iso2}, {iso2, iso2}, {sz2, sz2}, {iso, z2}};
  for (const auto& [S, T] : pairs) {
    auto fs = enumerate_functors(S, T);
    for (const auto& F : fs) {
      ++pres;
      t.expect(check_equiv_preservation(F).passed(), "functor " + S->name() + " -> " + T->name() + " breaks ∼");
    }
    for (const auto& F : fs)
      for (const auto& G : fs) {
        ++quasi;
        t.expect(quasiequal_implies_equal(F, G), "quasi-equal but different functors " + S->name() + " -> " + T->name());
      }
  }

  auto need = [&](std::size_t n, const std::string& what) {
    t.notes.push_back(what + ": " + std::to_string(n) + " instances");
    t.expect(n >= 5, what + ": fewer than 5 instances");
  };
  need(trans, "transitivity of ∼");
  need(unique, "quasi-inverses unique up to ∼");
  need(endo, "End(e^n a) composites agree");
  need(mono, "monic closure");
  need(epi, "epic closure");
  need(eqv, "equivalence-arrow closure");
  need(wit, "witness arrows are equivalences");
  need(pres, "strict functors preserve ∼");
  need(quasi, "quasi-equal functors are equal");
}

// ---- 4. Yoneda ------------------------------------------------------------

void yoneda_one(Tally& t, const PresheafRef& F, std::size_t& runs, std::size_t& levels) {
  const CatRef& base = F->base;
  for (Cell a : base->objects()) {
    ++runs;
    auto r = yoneda_check(base, a, F);
    std::string tag = F->name + " at " + base->name_of(a);
    t.expect(r.passed(), tag + ": " + [&] {
      std::string s;
      for (const auto& c : r.failed_checks()) s += c + " ";
      return s;
    }());
    // Independent count: cells of F(a) per degree against the reported pair.
    const FiniteOmegaCat& Fa = *F->fiber(a);
    for (int n = 0; n <= Fa.top_degree(); ++n) {
      ++levels;
      std::string want = std::to_string(Fa.cells_of_degree(n).size());
      std::string got = r.fact_value("count." + std::to_string(n));
      t.expect(got == want + "/" + want, tag + " level " + std::to_string(n) + ": " + got);
    }
  }
}

void criterion_yoneda(Tally& t) {
  std::size_t runs = 0, levels = 0, bases = 0;
  auto term = share(corpus::terminal());
  auto arrow = share(corpus::walking_arrow());
  for (const auto& [name, cat] : corpus::categories()) {
    if (cat->size() > 10) continue;
    ++bases;
    for (Cell a : cat->objects())
      yoneda_one(t, std::make_shared<const CatValuedPresheaf>(hom_functor(cat, a, Variance::contravariant)), runs,
                 levels);
    auto op = share(opposite(*cat));
    yoneda_one(t, std::make_shared<const CatValuedPresheaf>(constant_presheaf(op, term)), runs, levels);
    yoneda_one(t, std::make_shared<const CatValuedPresheaf>(constant_presheaf(op, arrow)), runs, levels);
  }
  for (const auto& e : corpus::presheaves()) yoneda_one(t, e.presheaf, runs, levels);
  t.notes.push_back(std::to_string(bases) + " corpus bases with <= 10 cells, " + std::to_string(runs) +
                    " Yoneda checks, " + std::to_string(levels) + " levels counted");
}

// ---- 5. adjunctions -------------------------------------------------------

void criterion_adjunctions(Tally& t) {
  auto adjs = corpus::adjunctions();
  t.expect(adjs.size() >= 3, "fewer than 3 toy adjunctions");
  for (const auto& [name, adj] : adjs) {
    auto r = check_adjunction_unit_counit(adj);
    t.expect(r.passed(), name + ": unit/counit check fails");
    t.expect(r.fact_value("triangles") == "true" && r.fact_value("phi_iso") == "true", name + ": sides disagree");
    t.expect(r.fact_value("biconditional") == "true", name + ": biconditional");
    t.expect(check_adjunction_kan(adj.F, adj.G, derive_phi(adj)).passed(), name + ": derived φ fails the hom-iso check");
  }
  // ε mutations: both sides must flip together.
  auto flip = [&](AdjunctionData adj, const std::string& tag) {
    auto r = check_adjunction_unit_counit(adj);
    t.expect(r.fact_value("triangles") == "false", tag + ": triangles still hold");
    t.expect(r.fact_value("phi_iso") == "false", tag + ": φ still invertible");
    t.expect(r.fact_value("biconditional") == "true", tag + ": biconditional");
  };
  {
    auto adj = corpus::identity_adjunction(share(corpus::cyclic(2)));
    adj.eps[0] = adj.right()->at("g");
    flip(adj, "Id⊣Id on Z2 with ε = g");
  }
  {
    auto adj = corpus::identity_adjunction(share(corpus::pseudo_iso()));
    const auto& R = *adj.right();
    adj.eps = {R.at("u"), R.at("v")};
    flip(adj, "Id⊣Id on PseudoIso with ε = (u,v)");
  }
  t.notes.push_back(std::to_string(adjs.size()) + " toy adjunctions, 2 ε mutations");
}

// ---- 6. limits ------------------------------------------------------------

void criterion_limits(Tally& t) {
  for (const auto& inst : {corpus::terminal_limit(), corpus::binary_product_2cat(), corpus::two_cell_equalizer(),
                           corpus::diamond_meet()}) {
    auto r = verify_strict_limit(inst.diagram, inst.cone);
    t.expect(r.passed() && r.fact_value("strict") == "true", inst.name + " is not a strict limit");
    t.notes.push_back(inst.name + ": strict");
  }
  for (auto cat : {share(corpus::diamond()), share(corpus::chain(3)), share(corpus::codiscrete2(corpus::diamond()))}) {
    auto d = check_delta_lim_adjunction(cat, discrete_graph(2));
    t.expect(d.report.passed() && d.report.fact_value("delta_lim.strict") == "true",
             "Δ⊣lim on " + cat->name() + " is not strict");
  }
  auto g = corpus::galois_adjunction(false);
  auto meet = corpus::diamond_meet();
  const auto& R = g.right();
  meet.diagram.target = R;
  meet.diagram.assignment = {R->at("l"), R->at("r")};
  meet.cone = {R->at("bot"), {R->at("bot<l"), R->at("bot<r")}, ConeKind::limit};
  t.expect(verify_strict_limit(meet.diagram, meet.cone).fact_value("strict") == "true", "meet cone is not strict");
  auto pres = check_preserves_limit(g.G, meet.diagram, meet.cone);
  t.expect(pres.passed(), "right adjoint does not preserve the product cone");
  auto image = verify_strict_limit(map_diagram(g.G, meet.diagram), map_cone(g.G, meet.cone));
  t.expect(image.fact_value("strict") == "true", "image cone is not a strict limit");
  t.notes.push_back("Δ⊣lim strict on 3 categories; right adjoint carries l×r to a strict product");
}

// ---- 7. Spencer -----------------------------------------------------------

void criterion_spencer(Tally& t) {
  struct Sym {
    std::string name;
    SymbolInput sym;
  };
  std::vector<Sym> syms;
  for (int n = 1; n <= 3; ++n)
    for (int q = 1; q <= 2; ++q)
      for (int k = 1; k <= 2; ++k)
        syms.push_back({"full n=" + std::to_string(n) + " q=" + std::to_string(q) + " k=" + std::to_string(k),
                        full_symbol(n, k, q)});
  std::vector<std::vector<oracle::Mono>> systems{{{2, 0}}, {{2, 0}, {0, 2}}, {{1, 1}}, {{2, 0, 0}, {0, 2, 0}}};
  for (const auto& killed : systems)
    syms.push_back({"monomial " + std::to_string(killed.size()) + " in n=" + std::to_string(killed[0].size()),
                    monomial_symbol(static_cast<int>(killed[0].size()), 2,
                                    std::vector<MultiIndex>(killed.begin(), killed.end()))});
  SymbolInput cr{2, 2, 1, QMatrix::from_rows({{1, 0, 0, -1}, {0, 1, 1, 0}}, 4)};
  syms.push_back({"cauchy-riemann", cr});

  std::size_t positions = 0;
  for (const auto& [name, sym] : syms) {
    auto tower = prolong_tower(sym, 4);
    for (int r = 1; r <= 4; ++r) {
      ++positions;
      t.expect(delta_squares_to_zero(tower, r), name + ": δ² ≠ 0 at r=" + std::to_string(r));
      auto dims = complex_dims(tower, r);
      auto h = cohomology_dims(tower, r);
      long a = 0, b = 0;
      for (std::size_t l = 0; l < h.size(); ++l) {
        long sign = l % 2 ? -1 : 1;
        a += sign * static_cast<long>(dims[l]);
        b += sign * static_cast<long>(h[l]);
      }
      t.expect(a == b, name + ": Euler identity at r=" + std::to_string(r));
    }
  }
  // δ-Poincaré for full symbols against the minor-rank oracle.
  for (int n = 1; n <= 3; ++n)
    for (int q = 1; q <= 2; ++q)
      for (int r = 1; r <= 4; ++r) {
        auto h = cohomology_dims(full_symbol(n, 1, q), r);
        auto o = oracle::monomial_cohomology(n, q, r, {});
        t.expect(h == o, "full n=" + std::to_string(n) + " q=" + std::to_string(q) + ": differs from the oracle");
        t.expect(std::all_of(h.begin(), h.end(), [](std::size_t x) { return x == 0; }), "full symbol not acyclic");
      }
  // u_xx = 0 in two variables.
  bool oracle_zero = true;
  for (int r = 1; r <= 4; ++r)
    for (auto x : oracle::monomial_cohomology(2, 2, r, {{2, 0}})) oracle_zero = oracle_zero && x == 0;
  auto uxx = check_involutive(monomial_symbol(2, 2, {{2, 0}}), 4);
  t.expect(oracle_zero, "oracle: u_xx not acyclic (frozen value is involutive)");
  t.expect(uxx.fact_value("involutive") == (oracle_zero ? "true" : "false"), "u_xx verdict differs from the oracle");
  t.notes.push_back(std::to_string(syms.size()) + " symbols, " + std::to_string(positions) +
                    " (symbol, r) positions; u_xx involutive = " + uxx.fact_value("involutive"));
}

// ---- 8. Jet / Diff --------------------------------------------------------

QMatrix derivative(int m) {
  QMatrix d(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  for (int j = 1; j < m; ++j) d(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j)) = j;
  return d;
}

void criterion_jetdiff(Tally& t) {
  std::size_t cases = 0, order_pairs = 0;
  for (int m = 1; m <= 4; ++m) {
    auto a = std::make_shared<const FiniteAlgebra>(truncated_polynomials(m));
    auto A = regular_module(a);
    for (std::size_t copies : {1u, 2u}) {
      auto P = copies == 1 ? A : direct_sum(A, A);
      std::string tag = "m=" + std::to_string(m) + " P=" + (copies == 1 ? "A" : "A+A");
      auto J0 = jet_module(P, 0);
      t.expect(J0.module.dim == P.dim && rank(J0.jet) == P.dim, tag + ": Jet^0 is not P");
      t.expect(diff_space(P, A, 0) == module_homs(P, A), tag + ": Diff_0 differs from Hom_A");
      for (int s = 0; s <= 3; ++s) {
        ++cases;
        std::string at = tag + " s=" + std::to_string(s);
        auto r = verify_vinogradov_duality(P, s);
        t.expect(r.passed(), at + ": duality maps fail");
        t.expect(r.fact_value("dim_diff") == r.fact_value("dim_hom_jet"), at + ": dim Diff_s vs Hom(Jet^s, A)");
        t.expect(r.fact_value("dim_jet") == r.fact_value("dim_hom_diff"), at + ": dim Jet^s vs Hom(Diff_s, A)");
        auto mm = static_cast<std::size_t>(m);
        t.expect(r.fact_value("dim_diff") == std::to_string(oracle::diff_dim(mm, copies, s)), at + ": Diff oracle");
        t.expect(r.fact_value("dim_jet") == std::to_string(oracle::jet_dim(mm, copies, s)), at + ": Jet oracle");
      }
    }
    // ord(Δ2 ∘ Δ1) <= ord Δ1 + ord Δ2 on every composable pair.
    std::vector<QMatrix> ops{QMatrix(A.dim, A.dim), QMatrix::identity(A.dim), derivative(m),
                             derivative(m) * derivative(m)};
    if (m > 1) ops.push_back(A.actions[1]), ops.push_back(A.actions[1] * derivative(m));
    for (const auto& d1 : ops)
      for (const auto& d2 : ops) {
        ++order_pairs;
        auto r = operator_order(d1, A, A), s = operator_order(d2, A, A), rs = operator_order(d2 * d1, A, A);
        t.expect(r && s && rs && *rs <= *r + *s, "order bound fails for m=" + std::to_string(m));
      }
  }
  t.notes.push_back(std::to_string(cases) + " (m, s, P) cases, " + std::to_string(order_pairs) + " operator pairs");
}

// ---- 9. CLI ---------------------------------------------------------------

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_tool(const std::string& binary, const std::string& dir, const std::vector<std::string>& args) {
  std::string cmd = "cd " + shell_quote(dir) + " && " + shell_quote(binary);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_cli(Tally& t, const std::string& binary, const std::string& corpus_dir) {
  auto manifest = nlohmann::json::parse(slurp(fs::path(corpus_dir) / "manifest.json"));
  std::set<int> codes;
  std::size_t commands = 0;
  for (const auto& entry : manifest) {
    auto args = entry.at("args").get<std::vector<std::string>>();
    int expect = entry.at("expect").get<int>();
    std::string line;
    for (const auto& a : args) line += a + " ";
    auto first = run_tool(binary, corpus_dir, args);
    auto second = run_tool(binary, corpus_dir, args);
    ++commands;
    t.expect(first.code == expect, line + "exited " + std::to_string(first.code) + ", expected " +
                                       std::to_string(expect));
    t.expect(first.code == second.code && first.out == second.out, line + "differs between runs");
    t.expect(!first.out.empty(), line + "wrote nothing");
    codes.insert(first.code);
  }
  for (int c : {0, 1, 2}) t.expect(codes.count(c) == 1, "no corpus example exits " + std::to_string(c));

  // Fresh export matches the checked-in corpus byte for byte.
  fs::path fresh = fs::temp_directory_path() / ("ocat-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(fresh);
  auto exp = run_tool(binary, ".", {"export-corpus", fresh.string()});
  t.expect(exp.code == 0, "export-corpus failed");
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(fresh)) {
    if (!e.is_regular_file()) continue;
    ++files;
    auto rel = fs::relative(e.path(), fresh);
    t.expect(slurp(e.path()) == slurp(fs::path(corpus_dir) / rel), "exported " + rel.string() + " differs");
  }
  fs::remove_all(fresh);

  // parse → print → parse on every text file.
  std::size_t fix = 0;
  for (const auto& e : fs::recursive_directory_iterator(corpus_dir)) {
    if (e.path().extension() != ".ocat") continue;
    std::string rel = fs::relative(e.path(), corpus_dir).string();
    try {
      auto p = dsl::parse(slurp(e.path()));
      auto text = dsl::print(p);
      auto back = dsl::parse(text);
      ++fix;
      t.expect(back == p, rel + ": AST changes after printing");
      t.expect(dsl::print(back) == text, rel + ": printing is not a fixpoint");
    } catch (const dsl::DslError& err) {
      // Only the deliberately unresolvable sample may fail, and only later.
      t.expect(rel.find("unresolved") != std::string::npos, rel + ": " + err.what());
    }
  }
  t.notes.push_back(std::to_string(commands) + " commands run twice, exit codes seen {" +
                    [&] {
                      std::string s;
                      for (int c : codes) s += (s.empty() ? "" : ",") + std::to_string(c);
                      return s;
                    }() +
                    "}, " + std::to_string(files) + " exported files compared, " + std::to_string(fix) +
                    " files at the print fixpoint");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s OCAT_BINARY CORPUS_DIR\n", argv[0]);
    return 2;
  }
  const std::string binary = fs::absolute(argv[1]).string();
  const std::string corpus_dir = fs::absolute(argv[2]).string();
  run_criterion(1, "axiom mutations isolate each clause", criterion_mutations);
  run_criterion(2, "equivalence degrees", criterion_degrees);
  run_criterion(3, "lemma replays", criterion_lemmas);
  run_criterion(4, "Yoneda counts and round trips", criterion_yoneda);
  run_criterion(5, "adjunction biconditional", criterion_adjunctions);
  run_criterion(6, "strict limits and adjoint preservation", criterion_limits);
  run_criterion(7, "Spencer complex", criterion_spencer);
  run_criterion(8, "jets and differential operators", criterion_jetdiff);
  run_criterion(9, "CLI determinism and exit codes", [&](Tally& t) { criterion_cli(t, binary, corpus_dir); });
  std::printf("%d of 9 criteria failed\n", g_failed);
  return g_failed ? 1 : 0;
}

#include <algorithm>
#include <set>

#include "ocat/category.hpp"
#include "ocat/equivalence.hpp"

namespace ocat {

const std::vector<std::string>& precategory_clauses() {
  static const std::vector<std::string> ids{clause::grading, clause::globularity, clause::identity,
                                            clause::composability};
  return ids;
}

const std::vector<std::string>& category_clauses() {
  static const std::vector<std::string> ids{clause::transitivity, clause::compatibility, clause::hc_grading,
                                            clause::hc_boundary,  clause::hc_identity,   clause::interchange,
                                            clause::associativity, clause::unit};
  return ids;
}

namespace {

std::string kname(const char* op, int k) { return std::string(op) + std::to_string(k); }

// Cells that failed an earlier precategory clause are left out of later ones
// so each defect is reported once, by the clause it violates.
struct PrecatState {
  std::vector<bool> tainted;
};

PrecatState run_precategory(const FiniteOmegaCat& cat, CheckReport& rep) {
  const int top = cat.top_degree();
  const auto n = static_cast<std::uint32_t>(cat.size());
  PrecatState st{std::vector<bool>(n, false)};
  auto nm = [&](std::uint32_t i) { return cat.stored(i).name; };
  for (const auto& id : precategory_clauses()) rep.pass(id);

  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& s = cat.stored(i);
    bool bad = false;
    if (s.degree > top) {
      rep.fail(clause::grading, "stored cell above the top degree", {s.name});
      bad = true;
    } else if (s.degree == 0) {
      if (s.dom != kNone || s.cod != kNone) {
        rep.fail(clause::grading, "object has a boundary", {s.name});
        bad = true;
      }
    } else if (s.dom == kNone || s.cod == kNone) {
      rep.fail(clause::grading, "missing boundary", {s.name});
      bad = true;
    } else if (cat.stored(s.dom).degree != s.degree - 1 || cat.stored(s.cod).degree != s.degree - 1) {
      rep.fail(clause::grading, "deg(d)=deg(c)=-1 violated", {s.name});
      bad = true;
    }
    st.tainted[i] = bad;
  }
  // A cell whose boundary is tainted cannot be checked further either.
  for (int deg = 1; deg <= top; ++deg)
    for (auto i : cat.stored_of_degree(deg)) {
      const auto& s = cat.stored(i);
      if (!st.tainted[i] && (st.tainted[s.dom] || st.tainted[s.cod])) st.tainted[i] = true;
    }

  for (int deg = 2; deg <= top; ++deg)
    for (auto i : cat.stored_of_degree(deg)) {
      if (st.tainted[i]) continue;
      const auto& s = cat.stored(i);
      const auto &ds = cat.stored(s.dom), &cs = cat.stored(s.cod);
      if (ds.dom != cs.dom || ds.cod != cs.cod) {
        rep.fail(clause::globularity, ds.dom != cs.dom ? "d d != d c" : "c c != c d", {nm(i)});
        st.tainted[i] = true;
      }
    }
  for (int deg = 2; deg <= top; ++deg)
    for (auto i : cat.stored_of_degree(deg)) {
      const auto& s = cat.stored(i);
      if (!st.tainted[i] && (st.tainted[s.dom] || st.tainted[s.cod])) st.tainted[i] = true;
    }

  for (std::uint32_t i = 0; i < n; ++i) {
    if (st.tainted[i]) continue;
    const auto& s = cat.stored(i);
    if (s.degree == top) {
      if (s.identity != kNone) rep.fail(clause::identity, "stored identity above the top degree", {s.name});
      continue;
    }
    if (s.identity == kNone) {
      rep.fail(clause::identity, "e is not total", {s.name});
      continue;
    }
    const auto& es = cat.stored(s.identity);
    if (es.degree != s.degree + 1) {
      rep.fail(clause::identity, "deg(e x) != deg(x)+1", {s.name, es.name});
      continue;
    }
    if (es.dom != i) rep.fail(clause::identity, "de=1 violated", {s.name, es.name});
    if (es.cod != i) rep.fail(clause::identity, "ce=1 violated", {s.name, es.name});
  }

  // Entries must sit exactly on composable pairs.
  for (const auto& en : cat.compose_entries()) {
    if (st.tainted[en.f] || st.tainted[en.g]) continue;
    Cell f{en.f, 0}, g{en.g, 0};
    if (!cat.composable(en.k, f, g))
      rep.fail(clause::composability, "entry on a non-composable pair",
               {kname("k=", en.k), nm(en.f), nm(en.g)});
  }
  for (int deg = 1; deg <= top; ++deg) {
    const auto& layer = cat.stored_of_degree(deg);
    for (int k = 1; k <= deg; ++k) {
      std::map<Cell, std::vector<std::uint32_t>> by_cod;
      for (auto g : layer)
        if (!st.tainted[g]) by_cod[cat.c({g, 0}, k)].push_back(g);
      for (auto f : layer) {
        if (st.tainted[f]) continue;
        auto it = by_cod.find(cat.d({f, 0}, k));
        if (it == by_cod.end()) continue;
        for (auto g : it->second)
          if (!cat.raw_compose(k, f, g))
            rep.fail(clause::composability, "composable pair without an entry", {kname("k=", k), nm(f), nm(g)});
      }
    }
  }
  return st;
}

class LawChecker {
 public:
  LawChecker(const FiniteOmegaCat& cat, bool weak, CheckReport& rep) : cat_(cat), weak_(weak), rep_(rep), eng_(cat) {}

  void run() {
    for (const auto& id : category_clauses()) rep_.pass(id);
    boundaries();
    transitivity();
    compatibility();
    hc_identity();
    interchange();
    associativity();
    unit();
  }

 private:
  bool same(Cell a, Cell b) { return weak_ ? eng_.equivalent(a, b) : a == b; }
  std::string nm(Cell x) const { return cat_.name_of(x); }

  // Composite through the tables, refusing entries already reported as bad.
  std::optional<Cell> comp(int k, Cell f, Cell g) {
    if (!cat_.composable(k, f, g)) return std::nullopt;
    if (f.lift == 0 && g.lift == 0 && bad_.count({k, f.base, g.base})) return std::nullopt;
    return cat_.compose(k, f, g);
  }

  void boundaries() {
    for (const auto& en : cat_.compose_entries()) {
      Cell f{en.f, 0}, g{en.g, 0}, h{en.result, 0};
      std::vector<std::string> w{kname("k=", en.k), nm(f), nm(g), nm(h)};
      if (cat_.degree(h) != cat_.degree(f)) {
        rep_.fail(clause::hc_grading, "deg(f ∘k g) != deg f", w);
        bad_.insert({en.k, en.f, en.g});
        continue;
      }
      Cell want_d, want_c;
      if (en.k == 1) {
        want_d = cat_.dom(g);
        want_c = cat_.cod(f);
      } else {
        auto dd = cat_.compose(en.k - 1, cat_.dom(f), cat_.dom(g));
        auto cc = cat_.compose(en.k - 1, cat_.cod(f), cat_.cod(g));
        if (dd) want_d = *dd;
        if (cc) want_c = *cc;
      }
      if (cat_.dom(h) != want_d || cat_.cod(h) != want_c) {
        rep_.fail(clause::hc_boundary, "boundary of a composite differs from the composite of boundaries", w);
        bad_.insert({en.k, en.f, en.g});
      }
    }
  }

  void transitivity() {
    for (int deg = 0; deg < cat_.top_degree(); ++deg) {
      auto layer = cat_.cells_of_degree(deg);
      for (Cell x : layer)
        for (Cell y : layer) {
          if (x == y || !eng_.equivalent(x, y)) continue;
          for (Cell z : layer)
            if (z != y && eng_.equivalent(y, z) && !eng_.equivalent(x, z))
              rep_.fail(clause::transitivity, "x ∼ y ∼ z but x ≁ z", {nm(x), nm(y), nm(z)});
        }
    }
  }

  void compatibility() {
    for (int deg = 1; deg < cat_.top_degree(); ++deg) {
      auto layer = cat_.cells_of_degree(deg);
      std::map<Cell, std::vector<Cell>> eq;
      for (Cell x : layer)
        for (Cell y : layer)
          if (x != y && eng_.equivalent(x, y)) eq[x].push_back(y);
      if (eq.empty()) continue;
      for (int k = 1; k <= deg; ++k)
        for (Cell f : layer)
          for (Cell h : layer) {
            auto fh = comp(k, f, h);
            if (!fh) continue;
            auto fs = eq[f], hs = eq[h];
            fs.push_back(f);
            hs.push_back(h);
            for (Cell g : fs)
              for (Cell kk : hs) {
                if (g == f && kk == h) continue;
                auto gk = comp(k, g, kk);
                if (gk && !eng_.equivalent(*fh, *gk))
                  rep_.fail(clause::compatibility, "∼ not compatible with ∘" + std::to_string(k),
                            {nm(f), nm(h), nm(g), nm(kk)});
              }
          }
    }
  }

  void hc_identity() {
    for (const auto& en : cat_.compose_entries()) {
      if (bad_.count({en.k, en.f, en.g})) continue;
      Cell f{en.f, 0}, g{en.g, 0}, h{en.result, 0};
      if (cat_.degree(h) >= cat_.top_degree()) continue;  // symbolic, holds by construction
      auto ef = cat_.identity(f), eg = cat_.identity(g), eh = cat_.identity(h);
      if (!ef || !eg || !eh) continue;
      auto rhs = comp(en.k + 1, *ef, *eg);
      if (!rhs) {
        rep_.fail(clause::hc_identity, "e f ∘(k+1) e g undefined", {kname("k=", en.k), nm(f), nm(g)});
        continue;
      }
      if (!same(*eh, *rhs))
        rep_.fail(clause::hc_identity, weak_ ? "e(f ∘k g) ≁ e f ∘(k+1) e g" : "e(f ∘k g) != e f ∘(k+1) e g",
                  {kname("k=", en.k), nm(f), nm(g)});
    }
  }

  void interchange() {
    auto entries = cat_.compose_entries();
    for (const auto& a : entries) {
      if (bad_.count({a.k, a.f, a.g})) continue;
      for (const auto& b : entries) {
        if (b.k != a.k || bad_.count({b.k, b.f, b.g})) continue;
        Cell f{a.f, 0}, f2{a.g, 0}, g{b.f, 0}, g2{b.g, 0}, left{a.result, 0}, right{b.result, 0};
        int deg = cat_.degree(f);
        if (cat_.degree(g) != deg) continue;
        for (int j = a.k + 1; j <= deg; ++j) {
          auto lhs = comp(j, left, right);
          if (!lhs) continue;
          auto fg = comp(j, f, g), f2g2 = comp(j, f2, g2);
          if (!fg || !f2g2) continue;
          auto rhs = comp(a.k, *fg, *f2g2);
          if (!rhs) continue;
          if (!same(*lhs, *rhs))
            rep_.fail(clause::interchange, "interchange law fails for ∘" + std::to_string(a.k) + " inside ∘" +
                                               std::to_string(j),
                      {nm(f), nm(f2), nm(g), nm(g2)});
        }
      }
    }
  }

  void associativity() {
    for (int deg = 1; deg <= cat_.top_degree(); ++deg) {
      auto layer = cat_.cells_of_degree(deg);
      for (int k = 1; k <= deg; ++k) {
        std::map<Cell, std::vector<Cell>> by_cod;
        for (Cell h : layer) by_cod[cat_.c(h, k)].push_back(h);
        for (Cell f : layer) {
          auto fit = by_cod.find(cat_.d(f, k));
          if (fit == by_cod.end()) continue;
          for (Cell g : fit->second) {
            auto fg = comp(k, f, g);
            if (!fg) continue;
            auto git = by_cod.find(cat_.d(g, k));
            if (git == by_cod.end()) continue;
            for (Cell h : git->second) {
              auto gh = comp(k, g, h);
              if (!gh) continue;
              auto l = comp(k, *fg, h), r = comp(k, f, *gh);
              if (!l || !r) continue;
              if (!same(*l, *r))
                rep_.fail(clause::associativity, "(f ∘k g) ∘k h vs f ∘k (g ∘k h)", {kname("k=", k), nm(f), nm(g), nm(h)});
            }
          }
        }
      }
    }
  }

  void unit() {
    for (int deg = 1; deg <= cat_.top_degree(); ++deg)
      for (Cell f : cat_.cells_of_degree(deg))
        for (int k = 1; k <= deg; ++k) {
          Cell lc = cat_.c(f, k), rd = cat_.d(f, k);
          std::optional<Cell> le = lc, re = rd;
          for (int j = 0; j < k && le && re; ++j) {
            le = cat_.identity(*le);
            re = cat_.identity(*re);
          }
          if (!le || !re) continue;
          auto l = comp(k, *le, f), r = comp(k, f, *re);
          if (l && !same(*l, f)) rep_.fail(clause::unit, "e^k c^k f ∘k f != f", {kname("k=", k), nm(f)});
          if (r && !same(*r, f)) rep_.fail(clause::unit, "f ∘k e^k d^k f != f", {kname("k=", k), nm(f)});
        }
  }

  const FiniteOmegaCat& cat_;
  bool weak_;
  CheckReport& rep_;
  EquivalenceEngine eng_;
  std::set<std::tuple<int, std::uint32_t, std::uint32_t>> bad_;
};

}  // namespace

CheckReport validate_precategory(const FiniteOmegaCat& cat) {
  CheckReport rep;
  rep.subject = cat.name();
  cat.check_references();
  run_precategory(cat, rep);
  return rep;
}

CheckReport validate_category(const FiniteOmegaCat& cat, bool up_to_equiv) {
  CheckReport rep;
  rep.subject = cat.name();
  cat.check_references();
  run_precategory(cat, rep);
  rep.fact("mode", up_to_equiv ? "weak" : "strict");
  if (!rep.passed()) {
    for (const auto& id : category_clauses()) rep.skip(id);
    return rep;
  }
  LawChecker(cat, up_to_equiv, rep).run();
  return rep;
}

CheckReport check_one_categories(const FiniteOmegaCat& cat) {
  CheckReport rep;
  rep.subject = cat.name();
  auto objs = cat.objects();
  for (int n = 1; n <= cat.top_degree(); ++n) {
    std::string id = "one_category." + std::to_string(n);
    rep.pass(id);
    auto arrows = cat.cells_of_degree(n);
    for (Cell a : objs) {
      Cell ea = cat.e(a, n);
      if (cat.d(ea, n) != a || cat.c(ea, n) != a) rep.fail(id, "identity has wrong ends", {cat.name_of(a)});
    }
    for (Cell f : arrows) {
      Cell ef_l = cat.e(cat.c(f, n), n), ef_r = cat.e(cat.d(f, n), n);
      auto l = cat.compose(n, ef_l, f), r = cat.compose(n, f, ef_r);
      if (!l || *l != f || !r || *r != f) rep.fail(id, "unit law", {cat.name_of(f)});
      for (Cell g : arrows) {
        if (cat.d(f, n) != cat.c(g, n)) continue;
        auto fg = cat.compose(n, f, g);
        if (!fg || cat.d(*fg, n) != cat.d(g, n) || cat.c(*fg, n) != cat.c(f, n)) {
          rep.fail(id, "composite missing or misplaced", {cat.name_of(f), cat.name_of(g)});
          continue;
        }
        for (Cell h : arrows) {
          if (cat.d(g, n) != cat.c(h, n)) continue;
          auto gh = cat.compose(n, g, h);
          if (!gh) continue;
          auto a = cat.compose(n, *fg, h), b = cat.compose(n, f, *gh);
          if (!a || !b || *a != *b) rep.fail(id, "associativity", {cat.name_of(f), cat.name_of(g), cat.name_of(h)});
        }
      }
    }
    // d and c are 1-functors L^n → L^(n-1) for these compositions (n >= 2).
    if (n >= 2) {
      for (Cell f : arrows)
        for (Cell g : arrows) {
          if (cat.d(f, n) != cat.c(g, n)) continue;
          auto fg = cat.compose(n, f, g);
          if (!fg) continue;
          for (auto side : {0, 1}) {
            Cell bf = side ? cat.cod(f) : cat.dom(f), bg = side ? cat.cod(g) : cat.dom(g);
            auto want = cat.compose(n - 1, bf, bg);
            Cell got = side ? cat.cod(*fg) : cat.dom(*fg);
            if (!want || *want != got)
              rep.fail(id, side ? "c is not a functor" : "d is not a functor", {cat.name_of(f), cat.name_of(g)});
          }
        }
    }
  }
  return rep;
}

}  // namespace ocat

#include <doctest.h>

#include "ocat/spencer.hpp"
#include "oracles.hpp"

using namespace ocat;

TEST_CASE("monomial and form bases") {
  auto m = monomials(2, 2);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == MultiIndex{2, 0});
  CHECK(m[1] == MultiIndex{1, 1});
  CHECK(m[2] == MultiIndex{0, 2});
  CHECK(monomial_count(3, 4) == 15);
  CHECK(monomial_count(2, -1) == 0);
  CHECK(monomial_label({2, 0, 1}) == "x1^2*x3");
  auto f = form_basis(3, 2);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::vector<int>{0, 1});
  CHECK(f[2] == std::vector<int>{1, 2});
}

TEST_CASE("prolongations") {
  CHECK(prolong(full_symbol(2, 1, 1), 1).dim() == 3);
  for (int r = 0; r <= 3; ++r) CHECK(prolong(zero_symbol(2, 1, 2), r).dim() == 0);
  // u_xx = 0 and {u_xx = 0, u_yy = 0}: dims from the divisibility oracle.
  std::vector<std::vector<oracle::Mono>> systems{{{2, 0}}, {{2, 0}, {0, 2}}, {{1, 1}}};
  for (const auto& killed : systems) {
    std::vector<MultiIndex> k(killed.begin(), killed.end());
    auto t = prolong_tower(monomial_symbol(2, 2, k), 4);
    for (int r = 0; r <= 4; ++r) CHECK(t.at(r).dim() == oracle::surviving(2, 2, r, killed).size());
  }
  auto uxx = prolong_tower(monomial_symbol(2, 2, {{2, 0}}), 2);
  CHECK(uxx.at(1).dim() == 2);
  CHECK(uxx.at(-1).dim() == 2);
  CHECK(uxx.at(-3).dim() == 0);
  CHECK_THROWS_AS(uxx.at(3), std::out_of_range);
  SymbolInput bad{2, 1, 2, QMatrix(1, 4)};
  CHECK_THROWS_AS(prolong(bad, 1), std::invalid_argument);
}

TEST_CASE("δ in one variable is the derivative") {
  auto t = prolong_tower(full_symbol(1, 1, 0), 4);
  for (int r = 1; r <= 4; ++r) {
    QMatrix d = spencer_delta(t, r, 0);
    CHECK(d.cols() == 1);
    CHECK(rank(d) == 1);
    CHECK(d(0, 0) == r);
  }
}

TEST_CASE("δ² = 0 and Euler characteristic") {
  for (int n = 1; n <= 3; ++n)
    for (int q = 1; q <= 2; ++q)
      for (int k = 1; k <= 2; ++k) {
        auto t = prolong_tower(full_symbol(n, k, q), 4);
        for (int r = 1; r <= 4; ++r) {
          CHECK(delta_squares_to_zero(t, r));
          auto dims = complex_dims(t, r);
          auto h = cohomology_dims(t, r);
          long a = 0, b = 0;
          for (std::size_t l = 0; l < h.size(); ++l) {
            a += (l % 2 ? -1 : 1) * static_cast<long>(dims[l]);
            b += (l % 2 ? -1 : 1) * static_cast<long>(h[l]);
          }
          CHECK(a == b);
        }
      }
}

TEST_CASE("full symbols are acyclic, matching the minor-rank oracle") {
  for (int n = 1; n <= 3; ++n)
    for (int q = 1; q <= 2; ++q)
      for (int r = 1; r <= 4; ++r) {
        CAPTURE(n);
        CAPTURE(q);
        CAPTURE(r);
        auto h = cohomology_dims(full_symbol(n, 1, q), r);
        auto o = oracle::monomial_cohomology(n, q, r, {});
        CHECK(h == o);
        CHECK(std::all_of(h.begin(), h.end(), [](std::size_t x) { return x == 0; }));
      }
  auto t = prolong_tower(full_symbol(2, 1, 1), 1);
  for (int l = 0; l < 2; ++l) {
    QMatrix d = spencer_delta(t, 1, l);
    auto o = oracle::monomial_delta(2, 1, 1, l, {});
    CHECK(rank(d) == oracle::minor_rank(o));
  }
}

TEST_CASE("monomial systems against the oracle") {
  std::vector<std::vector<oracle::Mono>> systems{{{2, 0}}, {{2, 0}, {0, 2}}, {{1, 1}}, {{2, 0, 0}, {0, 2, 0}}};
  for (const auto& killed : systems) {
    const int n = static_cast<int>(killed[0].size());
    std::vector<MultiIndex> k(killed.begin(), killed.end());
    auto sym = monomial_symbol(n, 2, k);
    SpencerTable tab;
    auto rep = check_involutive(sym, 4, &tab);
    bool zero = true;
    for (int r = 1; r <= 4; ++r) {
      auto o = oracle::monomial_cohomology(n, 2, r, killed);
      CHECK(tab.cohomology[static_cast<std::size_t>(r - 1)] == o);
      for (auto x : o) zero = zero && x == 0;
    }
    CHECK((rep.fact_value("involutive") == "true") == zero);
    CHECK(rep.status("spencer.delta_squared") == Status::pass);
    CHECK(rep.status("spencer.euler") == Status::pass);
  }
  // Frozen oracle outputs.
  CHECK(check_involutive(monomial_symbol(2, 2, {{2, 0}}), 4).fact_value("involutive") == "true");
  auto both = monomial_symbol(2, 2, {{2, 0}, {0, 2}});
  CHECK(cohomology_dims(both, 1) == std::vector<std::size_t>{0, 0, 0});
  CHECK(cohomology_dims(both, 2) == std::vector<std::size_t>{0, 0, 1});
  CHECK(check_involutive(both, 4).fact_value("involutive") == "false");
}

TEST_CASE("a truncated tower shows up as cohomology") {
  auto t = prolong_tower(full_symbol(2, 1, 1), 1);
  REQUIRE(t.at(1).dim() == 3);
  QMatrix rows = t.at(1).basis();
  QMatrix fewer(0, rows.cols());
  for (std::size_t i = 0; i + 1 < rows.rows(); ++i) fewer.append_row(rows.row(i));
  t.levels[1] = Subspace::span(fewer);
  auto h = cohomology_dims(t, 1);
  CHECK(h[1] == 1);
  CHECK(h[0] == 0);
}

TEST_CASE("vector-valued symbols") {
  // u_x = v_y, u_y = -v_x over n = 2, k = 2, q = 1: Cauchy-Riemann.
  SymbolInput cr{2, 2, 1, {}};
  // coordinates (x,u) (x,v) (y,u) (y,v)
  cr.relations = QMatrix::from_rows({{1, 0, 0, -1}, {0, 1, 1, 0}}, 4);
  auto rep = check_involutive(cr, 3);
  CHECK(rep.passed());
  CHECK(rep.fact_value("involutive") == "true");
  CHECK(prolong(cr, 1).dim() == 2);
}

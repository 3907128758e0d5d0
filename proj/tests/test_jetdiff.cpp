#include <doctest.h>

#include "ocat/jetdiff.hpp"
#include "oracles.hpp"

using namespace ocat;

namespace {

AlgebraRef trunc(int m) { return std::make_shared<const FiniteAlgebra>(truncated_polynomials(m)); }

// d/dx on ℚ[x]/(x^m): x^j ↦ j x^{j-1}.
QMatrix derivative(int m) {
  QMatrix d(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  for (int j = 1; j < m; ++j) d(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(j)) = j;
  return d;
}

std::vector<Rational> basis(const AlgebraRef& a, std::size_t i) { return a->basis_vector(i); }

}  // namespace

TEST_CASE("algebras and modules are validated") {
  for (int m = 1; m <= 4; ++m) {
    auto a = trunc(m);
    CHECK(check_algebra(*a).passed());
    auto P = regular_module(a);
    CHECK(check_module(P).passed());
    CHECK(check_module(direct_sum(P, P)).passed());
  }
  FiniteAlgebra bad = truncated_polynomials(2);
  bad.structure[0][1][1] = 0;
  bad.structure[0][1][0] = 1;  // 1·x = 1
  auto r = check_algebra(bad);
  CHECK(r.status("algebra.unit") == Status::fail);
  CHECK(r.status("algebra.commutative") == Status::fail);
  auto a = trunc(3);
  auto P = regular_module(a);
  P.actions[1](0, 0) = 1;
  CHECK(check_module(P).status("module.action") == Status::fail);
}

TEST_CASE("difference operators") {
  auto a = trunc(3);
  auto P = regular_module(a);
  QMatrix D = QMatrix::from_rows({{1, 2, 0}, {0, -1, 5}, {3, 0, 1}}, 3);
  CHECK(delta_op(P, P, a->unit, D).is_zero());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(delta_op(P, P, basis(a, i), P.actions[j]).is_zero());
  // δ_a δ_b = δ_b δ_a.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(delta_op(P, P, basis(a, i), delta_op(P, P, basis(a, j), D)) ==
            delta_op(P, P, basis(a, j), delta_op(P, P, basis(a, i), D)));
  // On ℚ[x]/(x²): δ_x(d/dx)(1) = x·0 − d/dx(x) = −1 and δ_x(d/dx)(x) = x·1 − d/dx(x²) = x.
  auto a2 = trunc(2);
  auto P2 = regular_module(a2);
  QMatrix got = delta_op(P2, P2, basis(a2, 1), derivative(2));
  oracle::Op byhand = oracle::delta(2, 1, 1, {{0, 1}, {0, 0}});
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) CHECK(got(r, c) == byhand[r][c]);
  CHECK(got == QMatrix::from_rows({{-1, 0}, {0, 1}}, 2));
  CHECK_THROWS_AS(delta_op(P2, P2, basis(a2, 1), QMatrix(3, 2)), DimensionError);
}

TEST_CASE("operator orders") {
  for (int m = 1; m <= 4; ++m) {
    auto a = trunc(m);
    auto P = regular_module(a);
    for (std::size_t i = 0; i < a->dim(); ++i) CHECK(operator_order(P.actions[i], P, P) == 0);
    CHECK(operator_order(QMatrix(P.dim, P.dim), P, P) == 0);
  }
  // d/dx on ℚ[x]/(x²) has order 2 over the truncated algebra.
  auto a2 = trunc(2);
  auto P2 = regular_module(a2);
  CHECK(operator_order(derivative(2), P2, P2) == 2);
  CHECK(operator_order(derivative(2), P2, P2, 1) == std::nullopt);
  // Order bound for composites on the corpus operators.
  for (int m = 2; m <= 4; ++m) {
    auto a = trunc(m);
    auto P = regular_module(a);
    std::vector<QMatrix> ops{QMatrix(P.dim, P.dim), P.actions[1], derivative(m), derivative(m) * derivative(m),
                             P.actions[1] * derivative(m), QMatrix::identity(P.dim)};
    for (const auto& d1 : ops)
      for (const auto& d2 : ops) {
        auto r = operator_order(d1, P, P), s = operator_order(d2, P, P);
        REQUIRE(r);
        REQUIRE(s);
        auto rs = operator_order(d2 * d1, P, P);
        REQUIRE(rs);
        CHECK(*rs <= *r + *s);
        CHECK(diff_space(P, P, *r + *s).contains(flatten(d2 * d1)));
      }
  }
}

TEST_CASE("Diff_s spaces") {
  for (int m = 1; m <= 4; ++m) {
    auto a = trunc(m);
    auto A = regular_module(a);
    CHECK(diff_space(A, A, 0).dim() == static_cast<std::size_t>(m));
    CHECK(diff_space(A, A, 0) == module_homs(A, A));
    // Saturation once s reaches 2m − 2.
    CHECK(diff_space(A, A, 2 * m - 2).dim() == static_cast<std::size_t>(m * m));
    for (int s = 0; s <= 3; ++s) {
      CHECK(diff_space(A, A, s).contains(diff_space(A, A, s - 1)));
      CHECK(diff_space(A, A, s).dim() == oracle::diff_dim(static_cast<std::size_t>(m), 1, s));
      auto AA = direct_sum(A, A);
      CHECK(diff_space(AA, A, s).dim() == oracle::diff_dim(static_cast<std::size_t>(m), 2, s));
    }
  }
  // Frozen from the oracle for ℚ[x]/(x²).
  auto a = trunc(2);
  auto A = regular_module(a);
  CHECK(diff_space(A, A, 0).dim() == 2);
  CHECK(diff_space(A, A, 1).dim() == 3);
  CHECK(diff_space(A, A, 2).dim() == 4);
}

TEST_CASE("jet modules") {
  for (int m = 1; m <= 4; ++m) {
    auto a = trunc(m);
    auto A = regular_module(a);
    for (auto P : {A, direct_sum(A, A)}) {
      auto J0 = jet_module(P, 0);
      CHECK(J0.module.dim == P.dim);
      CHECK(rank(J0.jet) == P.dim);
      CHECK(check_module(J0.module).passed());
      for (int s = 0; s <= 3; ++s) {
        auto J = jet_module(P, s);
        CHECK(J.module.dim == oracle::jet_dim(static_cast<std::size_t>(m), P.dim / a->dim(), s));
        CHECK(jet_relations(P, s - 1).contains(J.relations));
        CHECK(check_module(J.module).passed());
      }
    }
  }
  auto a = trunc(2);
  auto A = regular_module(a);
  CHECK(jet_module(A, 1).module.dim == 3);
}

TEST_CASE("representability of Diff_s") {
  for (int m = 1; m <= 3; ++m) {
    auto a = trunc(m);
    auto A = regular_module(a);
    for (int s = 0; s <= 2; ++s) {
      auto r = verify_representability(A, A, s);
      CHECK(r.passed());
      CHECK(r.fact_value("dim_hom") == r.fact_value("dim_diff"));
      CHECK(r.fact_value("dim_diff") == std::to_string(jet_module(A, s).module.dim));
      auto c = verify_counit_representability(A, direct_sum(A, A), s);
      CHECK(c.passed());
      CHECK(c.fact_value("dim_hom") == c.fact_value("dim_diff"));
    }
  }
}

TEST_CASE("Vinogradov duality") {
  auto q = trunc(1);
  auto r = verify_vinogradov_duality(regular_module(q), 2);
  CHECK(r.passed());
  for (auto k : {"dim_diff", "dim_jet", "dim_hom_jet", "dim_hom_diff"}) CHECK(r.fact_value(k) == "1");
  for (int m = 2; m <= 4; ++m) {
    auto a = trunc(m);
    auto A = regular_module(a);
    for (int s = 0; s <= 3; ++s) {
      auto one = verify_vinogradov_duality(A, s);
      auto two = verify_vinogradov_duality(direct_sum(A, A), s);
      CHECK(one.passed());
      CHECK(two.passed());
      CHECK(one.fact_value("dim_diff") == one.fact_value("dim_hom_jet"));
      CHECK(one.fact_value("dim_jet") == one.fact_value("dim_hom_diff"));
      CHECK(std::stoi(two.fact_value("dim_jet")) == 2 * std::stoi(one.fact_value("dim_jet")));
      CHECK(std::stoi(two.fact_value("dim_diff")) == 2 * std::stoi(one.fact_value("dim_diff")));
    }
  }
}

#pragma once
// Symbols of linear PDE systems, their prolongations and the Koszul-type
// δ-complex whose acyclicity is the involutivity test.
//
// Coordinates. Monomials of degree d in n variables are ordered by descending
// exponent vectors, so for n = 2, d = 2 the order is x², xy, y². A tensor in
// S_d ⊗ V has coordinate (α, j) at position index(α)·k + j. Forms in Λˡ are
// increasing index sets in lexicographic order, and S_d ⊗ V ⊗ Λˡ puts the
// form index last.

#include <cstddef>
#include <string>
#include <vector>

#include "ocat/linalg.hpp"
#include "ocat/report.hpp"

namespace ocat {

using MultiIndex = std::vector<int>;

// Exponent vectors of total degree d, in the order above. Empty for d < 0.
std::vector<MultiIndex> monomials(int n, int d);
std::size_t monomial_count(int n, int d);
std::string monomial_label(const MultiIndex& a);  // "x1^2*x2", "1"

// Increasing index subsets of {0..n-1} of size l, lexicographic.
std::vector<std::vector<int>> form_basis(int n, int l);

struct SymbolInput {
  int n = 1;  // independent variables
  int k = 1;  // dependent variables
  int q = 1;  // order
  QMatrix relations;  // rows over the S_q ⊗ V coordinates; may have zero rows
  std::size_t ambient() const { return monomial_count(n, q) * static_cast<std::size_t>(k); }
};

// Throws std::invalid_argument on negative sizes or a relation width other
// than ambient().
void validate_symbol(const SymbolInput& sym);

SymbolInput full_symbol(int n, int k, int q);
SymbolInput zero_symbol(int n, int k, int q);
// One row per listed monomial, killing that coefficient (k = 1).
SymbolInput monomial_symbol(int n, int q, const std::vector<MultiIndex>& killed);

// Formal derivative ∂/∂x_i as a matrix from S_d ⊗ V to S_{d-1} ⊗ V.
QMatrix partial_matrix(int n, int k, int d, int i);

struct ProlongationTower {
  SymbolInput symbol;
  std::vector<Subspace> levels;  // g^(0) .. g^(R)
  int height() const { return static_cast<int>(levels.size()) - 1; }
  // g^(r), with the full S_{q+r} ⊗ V below zero (and the zero space once
  // q + r < 0). Throws std::out_of_range above height().
  Subspace at(int r) const;
};

// g^(r) for r = 0..R, each solved as one kernel problem against the previous
// level. Every basis vector is re-checked by contraction; a failure throws
// std::logic_error.
ProlongationTower prolong_tower(const SymbolInput& sym, int R);
Subspace prolong(const SymbolInput& sym, int r);

// δ from g^(r-l) ⊗ Λˡ to g^(r-l-1) ⊗ Λˡ⁺¹ in the bases (basis vector of g)
// ⊗ (form), each ordered as described at the top. Throws std::logic_error if
// the image leaves the target, std::out_of_range if the tower is too short,
// std::invalid_argument unless 0 <= l < n.
QMatrix spencer_delta(const ProlongationTower& tower, int r, int l);
// The same map on the whole ambient S ⊗ Λ spaces.
QMatrix koszul_matrix(int n, int k, int d, int l);

// dim of g^(r-l) ⊗ Λˡ for l = 0..n.
std::vector<std::size_t> complex_dims(const ProlongationTower& tower, int r);
// dim H at positions l = 0..n of 0 → g^(r) → … → g^(r-n) ⊗ Λⁿ → 0.
std::vector<std::size_t> cohomology_dims(const ProlongationTower& tower, int r);
std::vector<std::size_t> cohomology_dims(const SymbolInput& sym, int r);

// δ∘δ = 0 exactly at every composable pair for this r.
bool delta_squares_to_zero(const ProlongationTower& tower, int r);

struct SpencerTable {
  std::vector<std::vector<std::size_t>> dims;        // per r = 1..r_max, the complex
  std::vector<std::vector<std::size_t>> cohomology;  // per r = 1..r_max
  std::vector<std::size_t> prolongation_dims;        // g^(0)..g^(r_max)
};

// Verdict "involutive" (fact "involutive" = "true") iff every H vanishes for
// 1 <= r <= r_max. Checks: spencer.symbol, spencer.contraction,
// spencer.delta_squared, spencer.euler, spencer.acyclic.
CheckReport check_involutive(const SymbolInput& sym, int r_max, SpencerTable* table = nullptr);

}  // namespace ocat

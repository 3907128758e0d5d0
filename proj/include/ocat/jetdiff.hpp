#pragma once
// Differential operators between modules over a finite-dimensional
// commutative ℚ-algebra, their filtrations, jet modules and the two
// representability bijections.
//
// A linear map P → Q is a (dim Q) × (dim P) matrix. Spaces of linear maps are
// Subspaces of row-major vectorised matrices, entry (i, j) at i·dim P + j.
// A ⊗ P has coordinate (i, p) at i·dim P + p.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ocat/linalg.hpp"
#include "ocat/report.hpp"

namespace ocat {

struct FiniteAlgebra {
  std::string name = "A";
  std::vector<std::string> labels;
  // structure[i][j][k]: coefficient of basis k in e_i · e_j.
  std::vector<std::vector<std::vector<Rational>>> structure;
  std::vector<Rational> unit;

  std::size_t dim() const { return labels.size(); }
  std::vector<Rational> multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
  // Left multiplication by a on A itself.
  QMatrix multiplication(const std::vector<Rational>& a) const;
  std::vector<Rational> basis_vector(std::size_t i) const;
};

// Shape, commutativity, associativity and unit laws over all basis triples.
CheckReport check_algebra(const FiniteAlgebra& a);

using AlgebraRef = std::shared_ptr<const FiniteAlgebra>;

struct FiniteModuleData {
  std::string name = "P";
  AlgebraRef algebra;
  std::size_t dim = 0;
  std::vector<QMatrix> actions;  // one per algebra basis element
  // Action of an arbitrary algebra element.
  QMatrix act(const std::vector<Rational>& a) const;
};

// Unit acts as the identity and e_i e_j acts as e_i after e_j.
CheckReport check_module(const FiniteModuleData& m);

// ℚ[x]/(x^m) with basis 1, x, …, x^{m-1}; m = 1 is ℚ.
FiniteAlgebra truncated_polynomials(int m);
FiniteModuleData regular_module(const AlgebraRef& a);
FiniteModuleData direct_sum(const FiniteModuleData& p, const FiniteModuleData& q);

// δ_a(D) = a·D − D·a.
QMatrix delta_op(const FiniteModuleData& P, const FiniteModuleData& Q, const std::vector<Rational>& a, const QMatrix& D);

// Smallest r <= max_r with every (r+1)-fold δ of basis elements killing D,
// by direct composition over multisets. max_r < 0 means 2·dim A.
std::optional<int> operator_order(const QMatrix& D, const FiniteModuleData& P, const FiniteModuleData& Q, int max_r = -1);

// Diff_s(P, Q) inside all linear maps; Diff_{-1} = 0. Throws std::logic_error
// if the filtration or either multiplication fails to preserve the space.
Subspace diff_space(const FiniteModuleData& P, const FiniteModuleData& Q, int s);
// A-linear maps, i.e. Diff_0 computed from commutation alone.
Subspace module_homs(const FiniteModuleData& P, const FiniteModuleData& Q);

// Vectorise / unvectorise a (rows × cols) map.
std::vector<Rational> flatten(const QMatrix& m);
QMatrix unflatten(const std::vector<Rational>& v, std::size_t rows, std::size_t cols);

struct JetModule {
  FiniteModuleData module;  // Jet^s(P) with A acting on the left factor
  Subspace relations;       // μ^{s+1} inside A ⊗ P
  QMatrix projection;       // A ⊗ P → Jet^s(P)
  QMatrix section;          // Jet^s(P) → A ⊗ P, standard complement vectors
  QMatrix jet;              // p ↦ [1 ⊗ p]
};

// Span of δ^{b_0}∘…∘δ^{b_s}(a ⊗ p) over basis tuples; empty s < 0 is all of A ⊗ P.
Subspace jet_relations(const FiniteModuleData& P, int s);
JetModule jet_module(const FiniteModuleData& P, int s);

// Module structure on a subspace of maps P → Q (e.g. Diff_s) for either
// multiplication: post-composition with a·− (left) or pre-composition (right).
enum class MapSide { left, right };
FiniteModuleData map_module(const FiniteModuleData& P, const FiniteModuleData& Q, const Subspace& maps, MapSide side,
                            std::string name);

// A-Mod(Jet^s P, Q) ≅ Diff_s(P, Q) through f ↦ f∘j and Δ ↦ ([a ⊗ p] ↦ aΔ(p)).
// Checks: repr.well_defined, repr.into_diff, repr.into_hom, repr.inverse,
// repr.linear. Facts: dims of both sides.
CheckReport verify_representability(const FiniteModuleData& P, const FiniteModuleData& Q, int s);

// A-Mod(Q, Diff_s⁺(A, P)) ≅ Diff_s(Q, P) through g ↦ ev∘g, ev(Δ) = Δ(1).
CheckReport verify_counit_representability(const FiniteModuleData& P, const FiniteModuleData& Q, int s);

// Diff_s(P, A) ≅ A-Mod(Jet^s P, A) and Jet^s P ≅ A-Mod(Diff_s(P, A), A) as
// A-linear isomorphisms with explicit inverses. Facts: dim_diff, dim_jet,
// dim_hom_jet, dim_hom_diff.
CheckReport verify_vinogradov_duality(const FiniteModuleData& P, int s);

}  // namespace ocat

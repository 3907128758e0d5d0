#pragma once
// ∞-CAT-valued presheaves on a finite base, their modifications, and the
// Yoneda correspondence.
//
// Every presheaf here is covariant on its base. A contravariant F: L^op → ∞-CAT
// is a presheaf on opposite(L); hom_functor builds L(−,a) that way.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ocat/fragment.hpp"
#include "ocat/functor.hpp"

namespace ocat {

struct CatValuedPresheaf {
  std::string name;
  CatRef base;
  std::vector<CatCell> objects;  // per base object (position in objects())
  std::vector<CatCell> cells;    // per stored base cell; null for objects

  // Value at any base cell; formal identities become identities in ∞-CAT.
  CatCell at(Cell x) const;
  const CatRef& fiber(Cell object) const;
};
using PresheafRef = std::shared_ptr<const CatValuedPresheaf>;

// b ↦ base(a, b); a cell θ acts by θ ∗ −.
CatValuedPresheaf representable(const CatRef& base, Cell a);
enum class Variance { covariant, contravariant };
// L(a,−) on `cat`, or L(−,a) on opposite(cat) for the contravariant case.
CatValuedPresheaf hom_functor(const CatRef& cat, Cell a, Variance v);
// Every object goes to `value`, every cell to an identity.
CatValuedPresheaf constant_presheaf(const CatRef& base, const CatRef& value);
// b ↦ P(b) × extra, cells act on the first factor.
CatValuedPresheaf presheaf_times(const CatValuedPresheaf& P, const CatRef& extra);

// Boundaries strictly, identities and composites up to ≈1.
CheckReport check_presheaf(const CatValuedPresheaf& P);

// Quasiequivalence of deepness k for k ∈ {0, 1}: equality, or equal
// boundaries with pairwise ∼ components.
bool approx(const CatCell& x, const CatCell& y, int k);

struct PresheafModification;
using PresheafModRef = std::shared_ptr<const PresheafModification>;

// Level 0: natural transformation P ⇒ Q with functor components. Level n:
// modification dom ⇛ cod whose components are (n−1)-modifications.
struct PresheafModification {
  std::string name;
  int level = 0;
  PresheafRef source, target;
  PresheafModRef dom, cod;        // null at level 0
  std::vector<CatCell> components;  // per base object

  const CatCell& at(Cell object) const;
};

CheckReport check_presheaf_modification(const PresheafModification& M);

// All strict-form modifications between P and Q at `level`, ordered by the
// lower levels first and then by components.
std::vector<PresheafModRef> enumerate_presheaf_modifications(const PresheafRef& P, const PresheafRef& Q, int level);

// Componentwise composite and identity, giving the presheaf category its
// globular operations. Composites return nullopt when not composable.
std::optional<PresheafModRef> compose(int k, const PresheafModRef& f, const PresheafModRef& g);
PresheafModRef identity_modification(const PresheafRef& P);
PresheafModRef identity_modification(const PresheafModRef& m);
std::string modification_key(const PresheafModRef& m);

// τ ↦ τ_a(e a). The presheaf must be representable(base, a) for `a`.
Cell yoneda_evaluate(const PresheafModification& tau, Cell a);
// β ↦ the modification with components g ↦ F(g)(β).
PresheafModRef yoneda_extend(const PresheafRef& Y, const PresheafRef& F, Cell a, Cell beta);

// Bijection, round trips and naturality in a and F. The sample for
// naturality in F is every natural transformation F ⇒ F.
CheckReport yoneda_check(const CatRef& base, Cell a, const PresheafRef& F);

struct Representability {
  bool strict = false;
  bool weak = false;
  CheckReport report;
};
// Criterion with a chosen β0 ∈ F(a)^0: strict when each Φ_b: base(a,b) → F(b),
// g ↦ F(g)(β0), is bijective; weak when each Φ_b is an equivalence arrow in
// the ∞-CAT fragment spanned by base(a,b) and F(b).
Representability representability_check(const PresheafRef& F, Cell a, Cell beta0);

// Categories, all strict functors between them and all modifications above,
// as a finite table one degree higher than the highest input.
FragmentSource<CatCell> cat_fragment(const std::vector<CatRef>& cats, const std::string& name);

// φ is an equivalence arrow in the ∞-CAT fragment spanned by its source and
// target. May throw EnumerationBoundError on larger categories.
bool functor_is_equivalence(const FunctorData& phi);
// a ∼ b as objects of ∞-CAT, decided in the fragment they span.
bool categories_equivalent(const CatRef& a, const CatRef& b);

// Y: x ↦ L(−,x) preserves and reflects ∼ between objects.
CheckReport yoneda_embedding_check(const CatRef& cat);

}  // namespace ocat

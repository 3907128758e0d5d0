#pragma once
// Small named categories used by tests, the acceptance run and the CLI's
// `example` inputs. Identities are named "e(x)" throughout.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ocat/functor.hpp"
#include "ocat/limits.hpp"
#include "ocat/presheaf.hpp"

namespace ocat::corpus {

struct ArrowSpec {
  std::string name, dom, cod;
};
// 1-category from generators: `compose(g, f)` names g∘f for non-identity
// composable pairs and may return an identity name "e(x)".
FiniteOmegaCat one_category(const std::string& name, const std::vector<std::string>& objects,
                            const std::vector<ArrowSpec>& arrows,
                            const std::function<std::string(const std::string& g, const std::string& f)>& compose);

FiniteOmegaCat terminal();                // one object "*"
FiniteOmegaCat discrete(int n);           // objects x0 .. x{n-1}
FiniteOmegaCat walking_arrow();           // f: a → b
FiniteOmegaCat walking_iso();             // f: a → b, g: b → a inverse
FiniteOmegaCat cyclic(int n);             // one object, g^i with g^n = e
FiniteOmegaCat chain(int n);              // 0 < 1 < … , arrows "i<j"
FiniteOmegaCat diamond();                 // bot < l, r < top
FiniteOmegaCat split_idempotent();        // f: a → b, g: b → a, g∘f = u, f∘g = v idempotent
// Finite sets: one object per entry of `sizes` (duplicates get a prime),
// every function as an arrow.
FiniteOmegaCat finset_sizes(const std::vector<int>& sizes, const std::string& name = "FinSet");
// All subsets of {1..n} and all functions between them.
FiniteOmegaCat finset_subsets(int n);
// Boolean algebras with 1, 2, 4 elements and their homomorphisms.
FiniteOmegaCat finbool();

// Exactly one 2-cell "[f,g]" between any parallel 1-cells.
FiniteOmegaCat codiscrete2(const FiniteOmegaCat& one_cat);
// One object; 1-cells: the identity; 2-cells: the arrows of a commutative
// one-object 1-category.
FiniteOmegaCat suspension(const FiniteOmegaCat& monoid);
// a ∼ b only through 2-cells: codiscrete2(split_idempotent()).
FiniteOmegaCat pseudo_iso();
// Pointed sets {0..n-1} with base point 0 for n = 1..max_size, objects "Pn".
FiniteOmegaCat pointed_sets(int max_size);
// Functor pseudo_iso → walking_iso raised to degree 2 identifying u, v with
// identities and every 2-cell with an identity.
FunctorData collapse_functor(const CatRef& pseudo, const CatRef& iso2);
// Constant functor at object `x` of the target.
FunctorData constant_functor(const CatRef& source, const CatRef& target, Cell x);

// Functor into a category with at most one cell between any two parallel
// cells, fixed by its action on objects.
FunctorData thin_functor(const std::string& name, const CatRef& source, const CatRef& target,
                         const std::map<std::string, std::string>& objects);
// Unit and counit made of the unique arrows a → GFa and FGb → b.
AdjunctionData thin_adjunction(const std::string& name, FunctorData F, FunctorData G);
AdjunctionData identity_adjunction(const CatRef& cat);
// Chain3 ⇄ Diamond with F: 0,1,2 ↦ bot,r,top and G: bot,l,r,top ↦ 0,0,1,2;
// the 2-dimensional variant runs on the codiscrete 2-categories.
AdjunctionData galois_adjunction(bool two_dimensional = false);
// F: FinSet{0,1,2} → 1 left adjoint to the choice of the terminal set.
AdjunctionData terminal_adjunction();

struct AdjunctionEntry {
  std::string name;
  AdjunctionData adjunction;
};
// Verified toy adjunctions, including Δ ⊣ × on Diamond.
std::vector<AdjunctionEntry> adjunctions();

struct LimitInstance {
  std::string name;
  DiagramData diagram;
  ConeData cone;
};
// Empty diagram in Chain3 with vertex 2.
LimitInstance terminal_limit();
// l × r = bot in Diamond.
LimitInstance diamond_meet();
// 1 × 2 = 2 in the codiscrete 2-category on FinSet{0,1,2}.
LimitInstance binary_product_2cat();
// Strict limit of a 2-cell α: F ⇒ G between functors Disc2 → Arrow inside the
// ∞-CAT fragment on {1, Disc2, Arrow}: the vertex 1 picks the object where α
// is an identity.
LimitInstance two_cell_equalizer();

ConcreteDuality terminal_self_duality();
// Pointed sets against their opposite, forgetfuls represented by P2.
ConcreteDuality pointed_self_duality();
// FinSet{0,1,2} against FinBool through powersets and atoms, forgetfuls
// represented by 1 and the free algebra B4.
ConcreteDuality stone_duality();

struct Entry {
  std::string name;
  CatRef cat;
};
// Valid categories for the mutation suite and Yoneda sweeps.
std::vector<Entry> categories();

struct PresheafEntry {
  std::string name;
  PresheafRef presheaf;
};
// Presheaves on small bases: representables, constants and a toy on a chain.
std::vector<PresheafEntry> presheaves();

}  // namespace ocat::corpus

#pragma once
// Functors, n-modifications and the cells of ∞-CAT built from them.
//
// A cell of ∞-CAT is a category (degree 0), a functor (degree 1) or an
// n-modification (degree n + 2). Modifications are stored in strict form:
// one component per source object.

#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ocat/category.hpp"
#include "ocat/equivalence.hpp"

namespace ocat {

// Thrown when an exhaustive enumeration would exceed the configured bound.
class EnumerationBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cell-count bound for functor enumeration (OCAT_MAX_CELLS overrides 12).
std::size_t enumeration_bound();
inline constexpr std::size_t kMaxFunctors = std::size_t{1} << 16;

struct CatCellData;
using CatCell = std::shared_ptr<const CatCellData>;

struct FunctorData {
  std::string name;
  CatRef source, target;
  std::vector<Cell> map;  // image of each stored source cell
  Cell apply(Cell x) const;
};

struct ModificationData {
  std::string name;
  int level = 0;
  CatCell dom, cod;            // functors at level 0, (level-1)-modifications above
  std::vector<Cell> components;  // indexed by position in source->objects()
  const CatRef& source() const;
  const CatRef& target() const;
  Cell at(Cell object) const;
};

struct CatCellData {
  std::variant<CatRef, FunctorData, ModificationData> value;
  int degree() const;
  bool is_category() const { return value.index() == 0; }
  bool is_functor() const { return value.index() == 1; }
  bool is_modification() const { return value.index() == 2; }
  const CatRef& category() const { return std::get<0>(value); }
  const FunctorData& functor() const { return std::get<1>(value); }
  const ModificationData& modification() const { return std::get<2>(value); }
  std::string name() const;
};

CatCell make_cell(CatRef c);
CatCell make_cell(FunctorData f);
CatCell make_cell(ModificationData m);

// Globular structure of ∞-CAT.
CatCell cat_dom(const CatCell& x);  // null for categories
CatCell cat_cod(const CatCell& x);
CatCell cat_d(const CatCell& x, int k);
CatCell cat_c(const CatCell& x, int k);
CatCell cat_identity(const CatCell& x);
CatCell cat_e(const CatCell& x, int times);
// Source/target categories of a functor or modification.
const CatRef& cat_source(const CatCell& x);
const CatRef& cat_target(const CatCell& x);
// Structural equality; categories compare by identity of the shared table.
bool same_cell(const CatCell& a, const CatCell& b);
bool composable(int k, const CatCell& a, const CatCell& b);
// The composite of the ∞-CAT definition; nullopt when not composable. Throws
// std::logic_error when a component composite is missing from a table.
std::optional<CatCell> cat_compose(int k, const CatCell& a, const CatCell& b);
// Image of a cell under a functor, or the component of a modification at an
// object (the double-evaluation used for Yoneda).
Cell evaluate_at(const CatCell& x, Cell cell);
// Canonical string used for deduplication.
std::string cat_key(const CatCell& x);

FunctorData identity_functor(const CatRef& cat);
FunctorData compose_functors(const FunctorData& g, const FunctorData& f);  // g ∘ f

// ---- checks --------------------------------------------------------------
enum class Strictness { weak, strict };

CheckReport check_functor(const FunctorData& F, Strictness mode);
// Equivalent pairs map to equivalent pairs, globally and hom-wise.
CheckReport check_equiv_preservation(const FunctorData& F);
// Boundary chain and naturality; fact "strict" tells whether every square
// commutes on the nose.
CheckReport check_modification(const ModificationData& M);
// (m,n)-invariance; facts "m" and "n" hold the observed values.
CheckReport check_invariant(const FunctorData& F, int m, int n);

// ---- enumeration ---------------------------------------------------------
// All strict functors source → target in deterministic order.
std::vector<FunctorData> enumerate_functors(const CatRef& source, const CatRef& target);
// All strict modifications dom ⇒ cod (both functors, or both (n-1)-mods with
// the same boundaries).
std::vector<ModificationData> enumerate_modifications(const CatCell& dom, const CatCell& cod);

// On a pair of functors: F(x) ∼ G(x) for all x implies F = G.
// Returns true when the implication holds.
bool quasiequal_implies_equal(const FunctorData& F, const FunctorData& G);

}  // namespace ocat

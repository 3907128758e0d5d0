#pragma once
// Diagrams over finite ∞-graphs, strict (co)limits, adjunctions checked in the
// hom-isomorphism and unit/counit styles, and concrete dualities.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ocat/functor.hpp"
#include "ocat/presheaf.hpp"

namespace ocat {

struct GraphData {
  struct Node {
    std::string name;
    int degree = 0;
    int dom = -1, cod = -1;  // node positions; -1 on objects
  };
  std::string name = "G";
  std::vector<Node> nodes;

  int add(std::string name, int degree = 0, int dom = -1, int cod = -1);
  int index(const std::string& name) const;  // -1 when absent
  std::vector<int> objects() const;          // positions of degree-0 nodes
  int d(int node, int k) const;
  int c(int node, int k) const;
};

// Grading and globularity (d² = dc, c² = cd).
CheckReport check_graph(const GraphData& g);

// n discrete objects "x0".. and nothing else.
GraphData discrete_graph(int n);

struct DiagramData {
  GraphData graph;
  CatRef target;
  std::vector<Cell> assignment;  // per graph node
  Cell at(int node) const { return assignment.at(static_cast<std::size_t>(node)); }
};

CheckReport check_diagram(const DiagramData& D);

enum class ConeKind { limit, colimit };

struct ConeData {
  Cell vertex;
  std::vector<Cell> edges;  // per graph object, in GraphData::objects() order
  ConeKind direction = ConeKind::limit;
};

// Edge boundaries and naturality against every graph cell; fact "strict"
// says whether the squares commute on the nose rather than up to ∼.
CheckReport check_cone(const DiagramData& D, const ConeData& cone);

// All natural families of (k+1)-cells from `vertex` to the diagram (limit)
// or from the diagram to `vertex` (colimit), in enumeration order. Each family
// is indexed like ConeData::edges.
std::vector<std::vector<Cell>> cone_families(const DiagramData& D, Cell vertex, int k, ConeKind kind);

inline constexpr std::size_t kMaxGraphNodes = 8;

// For every object b and every hom degree, f ↦ cone ∗ f (limit) or
// f ↦ f ∗ cocone (colimit) is a bijection from L(b, vertex) (resp.
// L(vertex, b)) onto the cone families. Facts "strict" and "weak"; the weak
// verdict asks for an equivalence of the hom category with the cone category
// when the bijection fails. Without decide_weak that search is skipped and
// "weak" is "unknown" for a non-strict cone.
CheckReport verify_strict_limit(const DiagramData& D, const ConeData& cone, bool decide_weak = true);

// First vertex and cone (in object and enumeration order) passing
// verify_strict_limit strictly.
std::optional<ConeData> find_strict_limit(const DiagramData& D, ConeKind kind);

// The unique arrow m with cone_to ∗ m = cone_from (limits) or
// m ∗ cone_from = cone_to (colimits), when exactly one exists.
std::optional<Cell> mediating_arrow(const DiagramData& D, const ConeData& universal, const ConeData& other);

// Two strict limit cones over D have mutually inverse mediating arrows.
CheckReport check_limit_uniqueness(const DiagramData& D, const ConeData& first, const ConeData& second);

// ---- adjunctions -------------------------------------------------------------

// F: L → L', G: L' → L with η: 1_L ⇒ GF and ε: FG ⇒ 1_L'.
struct AdjunctionData {
  std::string name = "F⊣G";
  FunctorData F, G;
  std::vector<Cell> eta;  // per object of L, components in L
  std::vector<Cell> eps;  // per object of L', components in L'
  const CatRef& left() const { return F.source; }
  const CatRef& right() const { return F.target; }
  ModificationData unit() const;
  ModificationData counit() const;
};

// φ_{a,b}: L(a, G b) → L'(F a, b) as tables of cells, one per object pair.
struct HomIsoFamily {
  std::map<std::pair<Cell, Cell>, std::map<Cell, Cell>> tables;
  std::optional<Cell> apply(Cell a, Cell b, Cell f) const;
};

// Every cell of L of positive degree with object boundaries a and b.
std::vector<Cell> hom_cells(const FiniteOmegaCat& cat, Cell a, Cell b);

// φ(f) = ε_b ∗ F(f) and φ*(g) = G(g) ∗ η_a.
HomIsoFamily derive_phi(const AdjunctionData& adj);
HomIsoFamily derive_phi_star(const AdjunctionData& adj);

// φ is total, functorial on each hom category, bijective (fact "strict") or
// an equivalence (fact "weak"), and natural on the squares where x, y or f
// is a 1-cell. Broken squares report the (x,y) pair.
CheckReport check_adjunction_kan(const FunctorData& F, const FunctorData& G, const HomIsoFamily& phi);

// Triangle identities strictly, then φ, φ* derived from η, ε: mutually
// inverse and natural. Fact "biconditional" holds when both sides agree.
CheckReport check_adjunction_unit_counit(const AdjunctionData& adj);

// ε_b represents L'(F(−), b) and η_a represents L(a, G(−)), with unique
// factorizations found by search.
CheckReport check_universal_elements(const AdjunctionData& adj);

// Left adjoints compose: (F'F ⊣ GG') with η = Gη'F ∘ η and ε = ε' ∘ F'εG'.
AdjunctionData compose_adjunctions(const AdjunctionData& inner, const AdjunctionData& outer);

// Two verified adjunctions with the same left adjoint have right adjoints
// equivalent object by object (fact "isomorphic" when also iso).
CheckReport check_adjoint_uniqueness(const AdjunctionData& first, const AdjunctionData& second);

// Δ ⊣ lim and colim ⊣ Δ for a discrete graph with at most two objects,
// assembled from chosen strict (co)limits and run through the unit/counit
// check.
struct DeltaLim {
  CatRef diagrams;  // L^n
  std::optional<AdjunctionData> delta_lim, colim_delta;
  CheckReport report;
};
DeltaLim check_delta_lim_adjunction(const CatRef& cat, const GraphData& graph);

// Image of a diagram and a cone under a functor; the cone image is then
// checked with verify_strict_limit.
DiagramData map_diagram(const FunctorData& G, const DiagramData& D);
ConeData map_cone(const FunctorData& G, const ConeData& cone);
CheckReport check_preserves_limit(const FunctorData& G, const DiagramData& D, const ConeData& cone);

// ---- concrete duality ------------------------------------------------------

// The dual adjunction is stored as an ordinary one, Gd: L → L'^op left
// adjoint to Fd: L'^op → L. The forgetful functors are presheaves on L and
// on L'; their values span the finite fragment of ∞-CAT used as the base.
struct ConcreteDuality {
  AdjunctionData adjunction;
  PresheafRef U, V;
  Cell A_tilde, B_tilde;
};

// U(Ã) ∼ V(B̃); V∘Gd ∼ L(−,Ã) and U∘Fd^op ∼ L'(−,B̃), each decided by the
// representability criterion. The dual adjunction itself is checked first.
CheckReport check_concrete_duality(const ConcreteDuality& dual);

// With U ∼ L(A0,−) and V ∼ L'(B0,−), sets Ã := Fd(B0), B̃ := Gd(A0) and runs
// check_concrete_duality on them. Facts "A_tilde", "B_tilde".
CheckReport check_representable_forgetfuls(ConcreteDuality dual, Cell A0, Cell B0);

// Functor table reused between a category and its opposite (indices agree).
FunctorData retarget(const FunctorData& f, CatRef source, CatRef target);

}  // namespace ocat

#pragma once
// The coinductive relation ∼ on a finite category, its degrees, arrow
// classification and homotopy groups.

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ocat/category.hpp"

namespace ocat {

class EquivalenceSearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Forward/backward arrows for x ∼ y, plus witnesses for e(x) ∼ g∘1 f and
// f∘1 g ∼ e(y). At or above the top degree ∼ is equality and the witness
// carries no arrows.
struct EquivalenceWitness {
  Cell source, target;
  Cell forward, backward;
  std::vector<EquivalenceWitness> sub;
  bool by_equality() const { return !forward.valid(); }
};

// Memoised search over one category. The category must outlive the engine.
class EquivalenceEngine {
 public:
  explicit EquivalenceEngine(const FiniteOmegaCat& cat) : cat_(cat) {}

  bool equivalent(Cell x, Cell y);
  // First witness in (forward, backward) index order; x ∼ x uses (e x, e x).
  std::optional<EquivalenceWitness> witness(Cell x, Cell y);
  // Witness of minimal degree and that degree.
  std::optional<std::pair<EquivalenceWitness, int>> minimal_witness(Cell x, Cell y);
  std::optional<int> pair_degree(Cell x, Cell y);

  // f is an equivalence arrow: some g has e(d f) ∼ g∘1 f and f∘1 g ∼ e(c f).
  std::optional<Cell> quasi_inverse(Cell f);
  std::vector<Cell> quasi_inverses(Cell f);
  bool is_equivalence_arrow(Cell f) { return quasi_inverse(f).has_value(); }

  // Replays a witness through the tables.
  bool replay(const EquivalenceWitness& w);

  const FiniteOmegaCat& category() const { return cat_; }

 private:
  struct Entry {
    bool equivalent = false;
    int degree = 0;
    Cell first_f, first_g, best_f, best_g;
  };
  const Entry& solve(Cell x, Cell y);
  bool loop_ok(Cell x, Cell f, Cell g, int* degree);  // e(x) ∼ g∘1 f
  EquivalenceWitness build(Cell x, Cell y, bool minimal);

  const FiniteOmegaCat& cat_;
  std::map<std::pair<Cell, Cell>, Entry> memo_;
};

// Convenience wrappers with a fresh engine.
std::optional<EquivalenceWitness> are_equivalent(const FiniteOmegaCat& cat, Cell x, Cell y);
std::optional<int> pair_degree(const FiniteOmegaCat& cat, Cell x, Cell y);
// Max over object pairs of the minimal witness degree (0 for discrete).
int category_degree(const FiniteOmegaCat& cat);

struct ArrowClass {
  bool monic = false, epic = false, equivalence = false;
};
ArrowClass classify_arrow(const FiniteOmegaCat& cat, Cell f);
ArrowClass classify_arrow(EquivalenceEngine& eng, Cell f);

// Partition of cells into ∼-classes; each class sorted, classes ordered by
// their least member. Throws EquivalenceSearchError if ∼ is not transitive.
std::vector<std::vector<Cell>> equivalence_classes(EquivalenceEngine& eng, const std::vector<Cell>& cells);

struct HomotopyGroup {
  int n = 0;
  Cell base_point;                         // x
  std::vector<Cell> carrier;               // degree n+1 cells (n >= 1) or objects-of-hom (n = 0)
  std::vector<std::vector<Cell>> classes;  // partition by ∼
  // op on class indices (n >= 1): classes[i] ∘1 classes[j] lands in classes[op[i][j]]
  std::vector<std::vector<int>> op;
  int unit_class = -1;
  CheckReport report;
  bool pointed_set() const { return n == 0; }
  std::size_t order() const { return classes.size(); }
};

// π_n^I(a, x) for x: I → a. n = 0 gives the pointed set of arrows I → a.
HomotopyGroup homotopy_group(const FiniteOmegaCat& cat, Cell I, Cell a, Cell x, int n);

struct InducedMap {
  std::vector<int> class_map;  // source class index → target class index
  CheckReport report;
};
// g ↦ e^n f ∗ g from π_n^I(a, x) to π_n^I(b, f∘x).
InducedMap induced_map(const FiniteOmegaCat& cat, Cell f, Cell I, Cell x, int n);

// Keeps cells up to degree k; above that, equivalence arrows whose boundaries
// are kept.
FiniteOmegaCat equivalence_core(const FiniteOmegaCat& cat, int k);

}  // namespace ocat

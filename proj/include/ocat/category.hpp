#pragma once
// Finite strict omega-categories presented by explicit tables.
//
// Cells are addressed by `Cell`: a stored cell index plus a count of formal
// identities stacked on top of it. Only cells at the top degree ever carry a
// nonzero lift, so every cell has exactly one representation.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ocat/report.hpp"

namespace ocat {

inline constexpr std::uint32_t kNone = 0xffffffffu;

struct Cell {
  std::uint32_t base = kNone;
  std::uint32_t lift = 0;
  bool valid() const { return base != kNone; }
  auto operator<=>(const Cell&) const = default;
};

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept {
    return std::hash<std::uint64_t>{}((std::uint64_t{c.base} << 32) | c.lift);
  }
};

// Dangling references, duplicate names and similar defects that make a table
// unreadable, as opposed to axiom violations.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ComposeEntry {
  int k;
  std::uint32_t f, g, result;
  friend bool operator==(const ComposeEntry&, const ComposeEntry&) = default;
};

class FiniteOmegaCat {
 public:
  struct Stored {
    std::string name;
    int degree = 0;
    std::uint32_t dom = kNone;
    std::uint32_t cod = kNone;
    std::uint32_t identity = kNone;
  };

  FiniteOmegaCat(std::string name = "L", int top_degree = 1);

  // ---- construction --------------------------------------------------------
  std::uint32_t add_cell(std::string name, int degree, std::uint32_t dom = kNone, std::uint32_t cod = kNone);
  void set_boundary(std::uint32_t x, std::uint32_t dom, std::uint32_t cod);
  void set_identity(std::uint32_t x, std::uint32_t ex);  // kNone clears the entry
  void set_compose(int k, std::uint32_t f, std::uint32_t g, std::uint32_t h);  // kNone erases
  void set_name(std::string name) { name_ = std::move(name); }
  void set_declared_strict(bool s) { declared_strict_ = s; }
  void set_top_degree(int n) { top_degree_ = n; }
  // Throws StructuralError on references to missing cells.
  void check_references() const;

  // ---- stored data ---------------------------------------------------------
  const std::string& name() const { return name_; }
  int top_degree() const { return top_degree_; }
  bool declared_strict() const { return declared_strict_; }
  std::size_t size() const { return cells_.size(); }
  const Stored& stored(std::uint32_t i) const { return cells_.at(i); }
  const std::vector<std::uint32_t>& stored_of_degree(int n) const;
  std::vector<ComposeEntry> compose_entries() const;  // sorted by (k, f, g)
  std::size_t compose_count() const { return compose_.size(); }
  std::optional<std::uint32_t> raw_compose(int k, std::uint32_t f, std::uint32_t g) const;

  // ---- cell algebra --------------------------------------------------------
  std::optional<Cell> find(std::string_view name) const;
  Cell at(std::string_view name) const;  // throws StructuralError when unknown
  std::string name_of(Cell x) const;
  int degree(Cell x) const;  // -1 for invalid cells
  Cell dom(Cell x) const;    // invalid Cell when absent
  Cell cod(Cell x) const;
  Cell d(Cell x, int k) const;
  Cell c(Cell x, int k) const;
  std::optional<Cell> identity(Cell x) const;
  Cell e(Cell x, int times = 1) const;  // throws std::logic_error when e is missing
  std::optional<Cell> compose(int k, Cell f, Cell g) const;
  bool composable(int k, Cell f, Cell g) const;  // d^k f = c^k g and equal degrees >= k
  bool is_identity(Cell x) const;                 // x = e(d x)
  bool parallel(Cell x, Cell y) const;

  // Stored cells of degree n, or formal identities when n exceeds the top.
  std::vector<Cell> cells_of_degree(int n) const;
  std::vector<Cell> objects() const { return cells_of_degree(0); }
  // Cells x with dom x = a and cod x = b.
  std::vector<Cell> arrows(Cell a, Cell b) const;
  std::size_t object_index(Cell a) const;  // position among objects()

  // Equality of tables (cell names included, category name excluded).
  friend bool operator==(const FiniteOmegaCat& a, const FiniteOmegaCat& b);

 private:
  static std::uint64_t key(int k, std::uint32_t f, std::uint32_t g) {
    return (std::uint64_t(k) << 56) | (std::uint64_t(f) << 28) | g;
  }
  void index_cell(std::uint32_t i);
  void unindex_arrow(std::uint32_t i);

  std::string name_;
  int top_degree_;
  bool declared_strict_ = false;
  std::vector<Stored> cells_;
  std::unordered_map<std::uint64_t, std::uint32_t> compose_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
  std::vector<std::vector<std::uint32_t>> by_degree_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> arrows_;
  std::vector<std::uint32_t> object_slot_;
};

using CatRef = std::shared_ptr<const FiniteOmegaCat>;

// Name-based construction helper.
class CategoryBuilder {
 public:
  CategoryBuilder(std::string name, int top_degree);
  CategoryBuilder& cell(const std::string& name, int degree);
  CategoryBuilder& cell(const std::string& name, int degree, const std::string& dom, const std::string& cod);
  CategoryBuilder& identity(const std::string& x, const std::string& ex);
  CategoryBuilder& compose(int k, const std::string& f, const std::string& g, const std::string& h);
  CategoryBuilder& strict(bool s = true);
  // Adds a stored identity named "e(x)" for every cell below the top degree
  // that lacks one (in degree order).
  CategoryBuilder& auto_identities();
  // Fills absent composite entries forced by the unit laws and by
  // e(f ∘k g) = e f ∘(k+1) e g, iterating to a fixpoint.
  CategoryBuilder& derive_identity_composites();
  FiniteOmegaCat& raw() { return cat_; }
  FiniteOmegaCat build() const;
  CatRef share() const { return std::make_shared<const FiniteOmegaCat>(build()); }

 private:
  std::uint32_t id(const std::string& name) const;
  FiniteOmegaCat cat_;
};

void derive_identity_composites(FiniteOmegaCat& cat);

// ---- validation ------------------------------------------------------------
// Clause ids used in reports.
namespace clause {
inline constexpr const char* grading = "precat.grading";
inline constexpr const char* globularity = "precat.globularity";
inline constexpr const char* identity = "precat.identity";
inline constexpr const char* composability = "precat.composability";
inline constexpr const char* transitivity = "cat.transitivity";
inline constexpr const char* compatibility = "cat.compatibility";
inline constexpr const char* hc_grading = "cat.hc_grading";
inline constexpr const char* hc_boundary = "cat.hc_boundary";
inline constexpr const char* hc_identity = "cat.hc_identity";
inline constexpr const char* interchange = "cat.interchange";
inline constexpr const char* associativity = "cat.associativity";
inline constexpr const char* unit = "cat.unit";
}  // namespace clause
const std::vector<std::string>& precategory_clauses();
const std::vector<std::string>& category_clauses();

CheckReport validate_precategory(const FiniteOmegaCat& cat);
// Runs the precategory checks first; category clauses are reported as skipped
// when those fail.
CheckReport validate_category(const FiniteOmegaCat& cat, bool up_to_equiv);

// (L^0, L^n, d^n, c^n, ∘n) is a 1-category for every n <= N.
CheckReport check_one_categories(const FiniteOmegaCat& cat);

// ---- constructions -----------------------------------------------------------
// Cells f with d^k f = a and c^k f = b for some k >= 1, re-graded by
// deg(a) + 1. Cells keep their names. `remap`, when given, receives the new
// index of every stored cell (kNone outside the hom-set).
FiniteOmegaCat hom_set(const FiniteOmegaCat& cat, Cell a, Cell b, std::vector<std::uint32_t>* remap = nullptr);
// Translates a cell of `cat` lying in hom_set(cat, a, b) using that remap.
Cell to_hom_cell(const FiniteOmegaCat& cat, Cell a, Cell b, const std::vector<std::uint32_t>& remap, Cell x);
// Inverse of to_hom_cell.
Cell from_hom_cell(const FiniteOmegaCat& cat, Cell a, Cell b, const std::vector<std::uint32_t>& remap, Cell h);
// Horizontal composite along objects with identity padding. Throws
// std::invalid_argument when the padded cells are not composable.
Cell star(const FiniteOmegaCat& cat, Cell g, Cell f);
FiniteOmegaCat opposite(const FiniteOmegaCat& cat);
// Quotients degree n by ∼ and keeps only identities above.
FiniteOmegaCat truncate(const FiniteOmegaCat& cat, int n);
// Materialises the formal identities up to the new top degree.
FiniteOmegaCat raise_top_degree(const FiniteOmegaCat& cat, int new_top);
// Cells are equal-degree pairs named "(x,y)"; everything is componentwise.
// The factor with the lower top degree is raised first.
FiniteOmegaCat product(const FiniteOmegaCat& a, const FiniteOmegaCat& b);
// Disjoint union; clashing names from `b` get a trailing "'".
FiniteOmegaCat coproduct(const FiniteOmegaCat& a, const FiniteOmegaCat& b);

}  // namespace ocat

#pragma once
// Text presentations of categories, functors, modifications, graphs,
// diagrams, cones, adjunctions, presheaves and dualities.
//
//   file         := decl*
//   category     := "category" NAME "max_degree" INT ["strict"] "{" item* "}"
//                 | "category" NAME "=" "opposite" NAME
//   item         := "cell" NAME ":" INT [NAME "->" NAME]
//                 | "identity" NAME "=" NAME
//                 | "compose" INT ":" NAME "." NAME "=" NAME      (f ∘k g = h)
//                 | "derive"            (missing identities and unit composites)
//   functor      := "functor" NAME ":" NAME "->" NAME "{" ("map" NAME "=>" NAME)* "}"
//   modification := "modification" NAME "level" INT ":" NAME "=>" NAME "{" ("at" NAME "=" NAME)* "}"
//   graph        := "graph" NAME "{" ("node" NAME ":" INT [NAME "->" NAME])* "}"
//   diagram      := "diagram" NAME ":" NAME "->" NAME "{" ("map" NAME "=>" NAME)* "}"
//   cone         := "cone" NAME ":" NAME "at" NAME ["colimit"] "{" ("edge" NAME "=" NAME)* "}"
//   adjunction   := "adjunction" NAME ":" NAME "-|" NAME "{" (("unit" | "counit") NAME "=" NAME)* "}"
//   presheaf     := "presheaf" NAME "=" ("hom" | "hom_op") NAME NAME
//                 | "presheaf" NAME "on" NAME "{" ("at" NAME "=" NAME)* "}"
//   duality      := "duality" NAME ":" NAME "{" "forget" NAME NAME "tilde" NAME NAME "}"
//
// NAME is an identifier [A-Za-z_][A-Za-z0-9_']*, a digit string, or a double
// quoted string with \" and \\ escapes. "#" starts a comment. Every reference
// must name something declared earlier in the file.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ocat/functor.hpp"
#include "ocat/limits.hpp"
#include "ocat/presheaf.hpp"

namespace ocat::dsl {

struct Span {
  int line = 0, col = 0;
};

// Lexical, parse and resolve errors; what() reads "line:col: message".
class DslError : public std::runtime_error {
 public:
  DslError(Span at, const std::string& message);
  Span where;
};

// Spans are ignored by equality so that printed and reparsed files compare equal.
struct Named {
  std::string name;
  Span span;
};
inline bool operator==(const Named& a, const Named& b) { return a.name == b.name; }

struct CellItem {
  Named name;
  int degree = 0;
  std::optional<Named> dom, cod;
  friend bool operator==(const CellItem&, const CellItem&) = default;
};
struct IdentityItem {
  Named cell, identity;
  friend bool operator==(const IdentityItem&, const IdentityItem&) = default;
};
struct ComposeItem {
  int k = 1;
  Named f, g, result;
  friend bool operator==(const ComposeItem&, const ComposeItem&) = default;
};
struct DeriveItem {
  Span span;
  friend bool operator==(const DeriveItem&, const DeriveItem&) { return true; }
};
using CategoryItem = std::variant<CellItem, IdentityItem, ComposeItem, DeriveItem>;

struct Pair {
  Named from, to;
  friend bool operator==(const Pair&, const Pair&) = default;
};

struct CategoryDecl {
  Named name;
  int max_degree = 1;
  bool strict = false;
  std::vector<CategoryItem> items;
  std::optional<Named> opposite_of;
  friend bool operator==(const CategoryDecl&, const CategoryDecl&) = default;
};
struct FunctorDecl {
  Named name, source, target;
  std::vector<Pair> maps;
  friend bool operator==(const FunctorDecl&, const FunctorDecl&) = default;
};
struct ModificationDecl {
  Named name;
  int level = 0;
  Named dom, cod;
  std::vector<Pair> components;
  friend bool operator==(const ModificationDecl&, const ModificationDecl&) = default;
};
struct GraphDecl {
  Named name;
  std::vector<CellItem> nodes;
  friend bool operator==(const GraphDecl&, const GraphDecl&) = default;
};
struct DiagramDecl {
  Named name, graph, target;
  std::vector<Pair> maps;
  friend bool operator==(const DiagramDecl&, const DiagramDecl&) = default;
};
struct ConeDecl {
  Named name, diagram, vertex;
  bool colimit = false;
  std::vector<Pair> edges;
  friend bool operator==(const ConeDecl&, const ConeDecl&) = default;
};
struct AdjunctionDecl {
  Named name, left, right;
  std::vector<Pair> unit, counit;
  friend bool operator==(const AdjunctionDecl&, const AdjunctionDecl&) = default;
};
struct PresheafDecl {
  Named name, base;
  enum class Kind { hom, hom_op, table } kind = Kind::table;
  std::optional<Named> object;  // hom kinds
  std::vector<Pair> values;      // table kind: base cell → category / functor / modification
  friend bool operator==(const PresheafDecl&, const PresheafDecl&) = default;
};
struct DualityDecl {
  Named name, adjunction, U, V, A_tilde, B_tilde;
  friend bool operator==(const DualityDecl&, const DualityDecl&) = default;
};

using Decl = std::variant<CategoryDecl, FunctorDecl, ModificationDecl, GraphDecl, DiagramDecl, ConeDecl, AdjunctionDecl,
                          PresheafDecl, DualityDecl>;

struct Presentation {
  std::vector<Decl> decls;
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

Presentation parse(const std::string& source);
std::string print(const Presentation& p);
std::string quote_name(const std::string& name);  // bare when it lexes as one NAME

// Declarations turned into library values.
struct Workspace {
  std::map<std::string, CatRef> categories;
  std::map<std::string, FunctorData> functors;
  std::map<std::string, CatCell> modifications;
  std::map<std::string, GraphData> graphs;
  std::map<std::string, DiagramData> diagrams;
  std::map<std::string, std::pair<DiagramData, ConeData>> cones;
  std::map<std::string, AdjunctionData> adjunctions;
  std::map<std::string, PresheafRef> presheaves;
  std::map<std::string, ConcreteDuality> dualities;
  std::vector<std::string> order;  // declaration names in file order

  const CatRef& category(const std::string& name) const;  // throws std::invalid_argument
};

// Throws DslError at the offending reference.
Workspace resolve(const Presentation& p);

// Exports a table as a category declaration, every stored entry explicit.
CategoryDecl category_decl(const FiniteOmegaCat& cat);
CategoryDecl category_decl(const FiniteOmegaCat& cat, const std::string& name);
FunctorDecl functor_decl(const FunctorData& f, const std::string& name, const std::string& source,
                         const std::string& target);

// Collects declarations for library values, declaring every dependency once
// (keyed by object identity) under a fresh name. Each call returns the name
// it used. Presheaves are written in table form.
class Exporter {
 public:
  std::string category(const CatRef& cat, const std::string& preferred = "");
  std::string functor(const FunctorData& f, const std::string& preferred = "");
  std::string cell(const CatCell& x);  // category, functor or modification
  std::string presheaf(const PresheafRef& p, const std::string& preferred = "");
  std::string adjunction(const AdjunctionData& adj, const std::string& preferred = "");
  std::string graph(const GraphData& g, const std::string& preferred = "");
  std::string diagram(const DiagramData& d, const std::string& preferred = "");
  std::string cone(const DiagramData& d, const ConeData& c, const std::string& preferred = "");
  std::string duality(const ConcreteDuality& d, const std::string& preferred = "");

  const Presentation& presentation() const { return out_; }

 private:
  std::string fresh(const std::string& preferred);
  Presentation out_;
  std::set<std::string> used_;
  std::map<std::string, std::string> seen_;  // identity key → declared name
};

}  // namespace ocat::dsl

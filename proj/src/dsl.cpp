#include "ocat/dsl.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ocat::dsl {

DslError::DslError(Span at, const std::string& message)
    : std::runtime_error(std::to_string(at.line) + ":" + std::to_string(at.col) + ": " + message), where(at) {}

namespace {

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"category", "max_degree", "strict",  "cell",     "identity", "compose",
                                       "derive",   "opposite",   "functor", "map",      "modification", "level",
                                       "at",       "graph",      "node",    "diagram",  "cone",     "colimit",
                                       "edge",     "adjunction", "unit",    "counit",   "presheaf", "hom",
                                       "hom_op",   "on",         "duality", "forget",   "tilde"};
  return k;
}

bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '\'';
}

enum class Tok { word, quoted, punct, end };

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t t = 0; t < n; ++t, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;  // count code points, not bytes
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    Span at{line, col};
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (word_char(c)) {
      std::size_t j = i;
      while (j < src.size() && word_char(src[j])) ++j;
      out.push_back({Tok::word, src.substr(i, j - i), at});
      advance(j - i);
    } else if (c == '"') {
      std::string text;
      advance(1);
      bool closed = false;
      while (i < src.size()) {
        char d = src[i];
        if (d == '"') {
          advance(1);
          closed = true;
          break;
        }
        if (d == '\n') break;
        if (d == '\\') {
          if (i + 1 >= src.size() || (src[i + 1] != '"' && src[i + 1] != '\\'))
            throw DslError({line, col}, "unknown escape in quoted name");
          text += src[i + 1];
          advance(2);
          continue;
        }
        text += d;
        advance(1);
      }
      if (!closed) throw DslError(at, "unterminated quoted name");
      if (text.empty()) throw DslError(at, "empty name");
      out.push_back({Tok::quoted, text, at});
    } else {
      static const char* two[] = {"->", "=>", "-|"};
      bool matched = false;
      for (const char* p : two)
        if (src.compare(i, 2, p) == 0) {
          out.push_back({Tok::punct, p, at});
          advance(2);
          matched = true;
          break;
        }
      if (matched) continue;
      if (std::string(":.={}").find(c) != std::string::npos) {
        out.push_back({Tok::punct, std::string(1, c), at});
        advance(1);
      } else {
        throw DslError(at, std::string("unexpected character '") + c + "'");
      }
    }
  }
  out.push_back({Tok::end, "", {line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Presentation file() {
    Presentation p;
    while (peek().kind != Tok::end) p.decls.push_back(decl());
    return p;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return t_[std::min(pos_ + ahead, t_.size() - 1)]; }
  Token next() {
    Token tok = peek();
    if (pos_ < t_.size() - 1) ++pos_;
    return tok;
  }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Tok::end: return "end of input";
      case Tok::quoted: return "\"" + t.text + "\"";
      default: return "'" + t.text + "'";
    }
  }
  bool at_keyword(const std::string& k) const { return peek().kind == Tok::word && peek().text == k; }
  bool at_punct(const std::string& p) const { return peek().kind == Tok::punct && peek().text == p; }
  void keyword(const std::string& k) {
    if (!at_keyword(k)) throw DslError(peek().span, "expected '" + k + "', found " + describe(peek()));
    next();
  }
  void punct(const std::string& p) {
    if (!at_punct(p)) throw DslError(peek().span, "expected '" + p + "', found " + describe(peek()));
    next();
  }
  Named name() {
    const Token& t = peek();
    if (t.kind != Tok::word && t.kind != Tok::quoted) throw DslError(t.span, "expected a name, found " + describe(t));
    Token tok = next();
    return {tok.text, tok.span};
  }
  int integer() {
    const Token& t = peek();
    if (t.kind != Tok::word || t.text.empty() || !std::all_of(t.text.begin(), t.text.end(), ::isdigit) ||
        t.text.size() > 6)
      throw DslError(t.span, "expected an integer, found " + describe(t));
    return std::stoi(next().text);
  }
  bool at_name_then(const std::string& p) const {
    return (peek().kind == Tok::word || peek().kind == Tok::quoted) && peek(1).kind == Tok::punct &&
           peek(1).text == p;
  }

  CellItem cell_body() {
    CellItem c;
    c.name = name();
    punct(":");
    c.degree = integer();
    if (at_name_then("->")) {
      c.dom = name();
      punct("->");
      c.cod = name();
    }
    return c;
  }

  std::vector<Pair> pairs(const std::string& lead, const std::string& sep) {
    std::vector<Pair> out;
    punct("{");
    while (!at_punct("}")) {
      keyword(lead);
      Pair p;
      p.from = name();
      punct(sep);
      p.to = name();
      out.push_back(p);
    }
    punct("}");
    return out;
  }

  Decl decl() {
    const Token& t = peek();
    if (t.kind != Tok::word) throw DslError(t.span, "expected a declaration, found " + describe(t));
    const std::string k = t.text;
    next();
    if (k == "category") return category();
    if (k == "functor") {
      FunctorDecl f;
      f.name = name();
      punct(":");
      f.source = name();
      punct("->");
      f.target = name();
      f.maps = pairs("map", "=>");
      return f;
    }
    if (k == "modification") {
      ModificationDecl m;
      m.name = name();
      keyword("level");
      m.level = integer();
      punct(":");
      m.dom = name();
      punct("=>");
      m.cod = name();
      m.components = pairs("at", "=");
      return m;
    }
    if (k == "graph") {
      GraphDecl g;
      g.name = name();
      punct("{");
      while (!at_punct("}")) {
        keyword("node");
        g.nodes.push_back(cell_body());
      }
      punct("}");
      return g;
    }
    if (k == "diagram") {
      DiagramDecl d;
      d.name = name();
      punct(":");
      d.graph = name();
      punct("->");
      d.target = name();
      d.maps = pairs("map", "=>");
      return d;
    }
    if (k == "cone") {
      ConeDecl c;
      c.name = name();
      punct(":");
      c.diagram = name();
      keyword("at");
      c.vertex = name();
      if (at_keyword("colimit")) {
        next();
        c.colimit = true;
      }
      c.edges = pairs("edge", "=");
      return c;
    }
    if (k == "adjunction") {
      AdjunctionDecl a;
      a.name = name();
      punct(":");
      a.left = name();
      punct("-|");
      a.right = name();
      punct("{");
      while (!at_punct("}")) {
        bool unit = at_keyword("unit");
        if (!unit && !at_keyword("counit"))
          throw DslError(peek().span, "expected 'unit' or 'counit', found " + describe(peek()));
        next();
        Pair p;
        p.from = name();
        punct("=");
        p.to = name();
        (unit ? a.unit : a.counit).push_back(p);
      }
      punct("}");
      return a;
    }
    if (k == "presheaf") {
      PresheafDecl p;
      p.name = name();
      if (at_punct("=")) {
        next();
        if (at_keyword("hom"))
          p.kind = PresheafDecl::Kind::hom;
        else if (at_keyword("hom_op"))
          p.kind = PresheafDecl::Kind::hom_op;
        else
          throw DslError(peek().span, "expected 'hom' or 'hom_op', found " + describe(peek()));
        next();
        p.base = name();
        p.object = name();
      } else {
        keyword("on");
        p.base = name();
        p.values = pairs("at", "=");
      }
      return p;
    }
    if (k == "duality") {
      DualityDecl d;
      d.name = name();
      punct(":");
      d.adjunction = name();
      punct("{");
      keyword("forget");
      d.U = name();
      d.V = name();
      keyword("tilde");
      d.A_tilde = name();
      d.B_tilde = name();
      punct("}");
      return d;
    }
    throw DslError(t.span, "unknown declaration '" + k + "'");
  }

  CategoryDecl category() {
    CategoryDecl c;
    c.name = name();
    if (at_punct("=")) {
      next();
      keyword("opposite");
      c.opposite_of = name();
      return c;
    }
    keyword("max_degree");
    c.max_degree = integer();
    if (at_keyword("strict")) {
      next();
      c.strict = true;
    }
    punct("{");
    while (!at_punct("}")) {
      const Token& t = peek();
      if (at_keyword("cell")) {
        next();
        c.items.push_back(cell_body());
      } else if (at_keyword("identity")) {
        next();
        IdentityItem id;
        id.cell = name();
        punct("=");
        id.identity = name();
        c.items.push_back(id);
      } else if (at_keyword("compose")) {
        next();
        ComposeItem ci;
        ci.k = integer();
        punct(":");
        ci.f = name();
        punct(".");
        ci.g = name();
        punct("=");
        ci.result = name();
        c.items.push_back(ci);
      } else if (at_keyword("derive")) {
        c.items.push_back(DeriveItem{next().span});
      } else {
        throw DslError(t.span, "expected cell, identity, compose or derive, found " + describe(t));
      }
    }
    punct("}");
    return c;
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
};

std::string q(const Named& n) { return quote_name(n.name); }

void print_cell(std::ostringstream& o, const std::string& lead, const CellItem& c) {
  o << "  " << lead << " " << q(c.name) << " : " << c.degree;
  if (c.dom) o << " " << q(*c.dom) << " -> " << q(*c.cod);
  o << "\n";
}

void print_pairs(std::ostringstream& o, const std::string& lead, const std::string& sep, const std::vector<Pair>& ps) {
  for (const auto& p : ps) o << "  " << lead << " " << q(p.from) << " " << sep << " " << q(p.to) << "\n";
}

// ---- resolution ----------------------------------------------------------------

class Resolver {
 public:
  Workspace run(const Presentation& p) {
    for (const auto& d : p.decls) std::visit([this](const auto& x) { add(x); }, d);
    return std::move(ws_);
  }

 private:
  void claim(const Named& n) {
    if (!names_.insert(n.name).second) throw DslError(n.span, "duplicate declaration '" + n.name + "'");
    ws_.order.push_back(n.name);
  }
  template <class M>
  const typename M::mapped_type& lookup(const M& m, const Named& n, const char* what) {
    auto it = m.find(n.name);
    if (it == m.end()) throw DslError(n.span, std::string("unknown ") + what + " '" + n.name + "'");
    return it->second;
  }
  static Cell cell_in(const FiniteOmegaCat& cat, const Named& n) {
    auto c = cat.find(n.name);
    if (!c) throw DslError(n.span, "unknown cell '" + n.name + "' in category " + cat.name());
    return *c;
  }
  static std::uint32_t stored_in(const FiniteOmegaCat& cat, const Named& n) {
    Cell c = cell_in(cat, n);
    if (c.lift) throw DslError(n.span, "'" + n.name + "' is not a stored cell");
    return c.base;
  }
  static Cell object_in(const FiniteOmegaCat& cat, const Named& n) {
    Cell c = cell_in(cat, n);
    if (cat.degree(c) != 0) throw DslError(n.span, "'" + n.name + "' is not an object of " + cat.name());
    return c;
  }

  void add(const CategoryDecl& d) {
    claim(d.name);
    if (d.opposite_of) {
      auto op = opposite(*lookup(ws_.categories, *d.opposite_of, "category"));
      op.set_name(d.name.name);
      ws_.categories[d.name.name] = std::make_shared<const FiniteOmegaCat>(std::move(op));
      return;
    }
    if (d.max_degree < 0) throw DslError(d.name.span, "max_degree must be >= 0");
    CategoryBuilder b(d.name.name, d.max_degree);
    b.strict(d.strict);
    FiniteOmegaCat& cat = b.raw();
    for (const auto& item : d.items) {
      if (auto* c = std::get_if<CellItem>(&item)) {
        if (c->degree > d.max_degree)
          throw DslError(c->name.span, "cell degree exceeds max_degree " + std::to_string(d.max_degree));
        if (cat.find(c->name.name)) throw DslError(c->name.span, "duplicate cell name '" + c->name.name + "'");
        if (c->degree == 0 && c->dom) throw DslError(c->dom->span, "objects take no boundary");
        if (c->degree > 0 && !c->dom) throw DslError(c->name.span, "cell of positive degree needs a boundary");
        if (c->dom)
          cat.add_cell(c->name.name, c->degree, stored_in(cat, *c->dom), stored_in(cat, *c->cod));
        else
          cat.add_cell(c->name.name, c->degree);
      } else if (auto* id = std::get_if<IdentityItem>(&item)) {
        cat.set_identity(stored_in(cat, id->cell), stored_in(cat, id->identity));
      } else if (auto* ci = std::get_if<ComposeItem>(&item)) {
        if (ci->k < 1) throw DslError(ci->f.span, "composition index must be >= 1");
        cat.set_compose(ci->k, stored_in(cat, ci->f), stored_in(cat, ci->g), stored_in(cat, ci->result));
      } else {
        b.auto_identities();
        b.derive_identity_composites();
      }
    }
    ws_.categories[d.name.name] = b.share();
  }

  void add(const FunctorDecl& d) {
    claim(d.name);
    FunctorData f;
    f.name = d.name.name;
    f.source = lookup(ws_.categories, d.source, "category");
    f.target = lookup(ws_.categories, d.target, "category");
    const FiniteOmegaCat &S = *f.source, &T = *f.target;
    std::vector<std::optional<Cell>> img(S.size());
    for (const auto& p : d.maps) {
      auto x = stored_in(S, p.from);
      if (img[x]) throw DslError(p.from.span, "cell '" + p.from.name + "' mapped twice");
      img[x] = cell_in(T, p.to);
    }
    // Identities left out go to identities of the image, in degree order.
    for (int deg = 0; deg <= S.top_degree(); ++deg)
      for (auto x : S.stored_of_degree(deg)) {
        if (img[x]) continue;
        for (std::uint32_t y = 0; y < S.size(); ++y)
          if (S.stored(y).identity == x && img[y]) {
            auto e = T.identity(*img[y]);
            img[x] = e ? *e : T.e(*img[y]);
            break;
          }
        if (!img[x]) throw DslError(d.name.span, "functor " + f.name + " leaves '" + S.stored(x).name + "' unmapped");
      }
    for (const auto& c : img) f.map.push_back(*c);
    ws_.functors[f.name] = f;
  }

  CatCell level_cell(int level, const Named& n) {
    if (level == 0) return make_cell(lookup(ws_.functors, n, "functor"));
    return lookup(ws_.modifications, n, "modification");
  }

  void add(const ModificationDecl& d) {
    claim(d.name);
    if (d.level < 0) throw DslError(d.name.span, "level must be >= 0");
    ModificationData m;
    m.name = d.name.name;
    m.level = d.level;
    m.dom = level_cell(d.level, d.dom);
    m.cod = level_cell(d.level, d.cod);
    if (m.dom->degree() != m.cod->degree() || m.dom->degree() != d.level + 1)
      throw DslError(d.dom.span, "boundaries do not match level " + std::to_string(d.level));
    const FiniteOmegaCat &S = *m.source(), &T = *m.target();
    std::vector<std::optional<Cell>> comps(S.objects().size());
    for (const auto& p : d.components) {
      auto i = S.object_index(object_in(S, p.from));
      if (comps[i]) throw DslError(p.from.span, "component at '" + p.from.name + "' given twice");
      comps[i] = cell_in(T, p.to);
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (!comps[i])
        throw DslError(d.name.span, "modification " + m.name + " lacks a component at '" + S.name_of(S.objects()[i]) + "'");
      m.components.push_back(*comps[i]);
    }
    ws_.modifications[d.name.name] = make_cell(std::move(m));
  }

  static GraphData graph_of(const std::string& name, const std::vector<CellItem>& nodes) {
    GraphData g;
    g.name = name;
    for (const auto& n : nodes) {
      if (g.index(n.name.name) >= 0) throw DslError(n.name.span, "duplicate node '" + n.name.name + "'");
      if (n.degree == 0 && n.dom) throw DslError(n.dom->span, "objects take no boundary");
      if (n.degree > 0 && !n.dom) throw DslError(n.name.span, "node of positive degree needs a boundary");
      int dom = -1, cod = -1;
      if (n.dom) {
        dom = g.index(n.dom->name);
        cod = g.index(n.cod->name);
        if (dom < 0) throw DslError(n.dom->span, "unknown node '" + n.dom->name + "'");
        if (cod < 0) throw DslError(n.cod->span, "unknown node '" + n.cod->name + "'");
      }
      g.add(n.name.name, n.degree, dom, cod);
    }
    return g;
  }

  void add(const GraphDecl& d) {
    claim(d.name);
    ws_.graphs[d.name.name] = graph_of(d.name.name, d.nodes);
  }

  void add(const DiagramDecl& d) {
    claim(d.name);
    DiagramData D;
    D.graph = lookup(ws_.graphs, d.graph, "graph");
    D.target = lookup(ws_.categories, d.target, "category");
    std::vector<std::optional<Cell>> img(D.graph.nodes.size());
    for (const auto& p : d.maps) {
      int i = D.graph.index(p.from.name);
      if (i < 0) throw DslError(p.from.span, "unknown node '" + p.from.name + "'");
      if (img[static_cast<std::size_t>(i)]) throw DslError(p.from.span, "node '" + p.from.name + "' mapped twice");
      img[static_cast<std::size_t>(i)] = cell_in(*D.target, p.to);
    }
    for (std::size_t i = 0; i < img.size(); ++i) {
      if (!img[i]) throw DslError(d.name.span, "diagram leaves node '" + D.graph.nodes[i].name + "' unmapped");
      D.assignment.push_back(*img[i]);
    }
    ws_.diagrams[d.name.name] = D;
  }

  void add(const ConeDecl& d) {
    claim(d.name);
    const DiagramData& D = lookup(ws_.diagrams, d.diagram, "diagram");
    ConeData c;
    c.direction = d.colimit ? ConeKind::colimit : ConeKind::limit;
    c.vertex = object_in(*D.target, d.vertex);
    auto objs = D.graph.objects();
    std::vector<std::optional<Cell>> edges(objs.size());
    for (const auto& p : d.edges) {
      int node = D.graph.index(p.from.name);
      auto it = std::find(objs.begin(), objs.end(), node);
      if (it == objs.end()) throw DslError(p.from.span, "'" + p.from.name + "' is not an object node");
      edges[static_cast<std::size_t>(it - objs.begin())] = cell_in(*D.target, p.to);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!edges[i])
        throw DslError(d.name.span, "cone lacks an edge at '" + D.graph.nodes[static_cast<std::size_t>(objs[i])].name + "'");
      c.edges.push_back(*edges[i]);
    }
    ws_.cones[d.name.name] = {D, c};
  }

  void add(const AdjunctionDecl& d) {
    claim(d.name);
    AdjunctionData a;
    a.name = d.name.name;
    a.F = lookup(ws_.functors, d.left, "functor");
    a.G = lookup(ws_.functors, d.right, "functor");
    if (a.F.source != a.G.target || a.F.target != a.G.source)
      throw DslError(d.right.span, "functors " + a.F.name + " and " + a.G.name + " do not run in opposite directions");
    auto fill = [&](const FiniteOmegaCat& cat, const std::vector<Pair>& ps, const char* what, const Named& at) {
      std::vector<std::optional<Cell>> v(cat.objects().size());
      for (const auto& p : ps) {
        auto i = cat.object_index(object_in(cat, p.from));
        if (v[i]) throw DslError(p.from.span, std::string(what) + " component at '" + p.from.name + "' given twice");
        v[i] = cell_in(cat, p.to);
      }
      std::vector<Cell> out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i])
          throw DslError(at.span, std::string(what) + " lacks a component at '" + cat.name_of(cat.objects()[i]) + "'");
        out.push_back(*v[i]);
      }
      return out;
    };
    a.eta = fill(*a.F.source, d.unit, "unit", d.name);
    a.eps = fill(*a.F.target, d.counit, "counit", d.name);
    ws_.adjunctions[a.name] = a;
  }

  void add(const PresheafDecl& d) {
    claim(d.name);
    const CatRef& base = lookup(ws_.categories, d.base, "category");
    if (d.kind != PresheafDecl::Kind::table) {
      Cell a = object_in(*base, *d.object);
      auto P = hom_functor(base, a, d.kind == PresheafDecl::Kind::hom ? Variance::covariant : Variance::contravariant);
      P.name = d.name.name;
      ws_.presheaves[d.name.name] = std::make_shared<const CatValuedPresheaf>(std::move(P));
      return;
    }
    CatValuedPresheaf P;
    P.name = d.name.name;
    P.base = base;
    P.objects.assign(base->objects().size(), nullptr);
    P.cells.assign(base->size(), nullptr);
    for (const auto& p : d.values) {
      auto x = stored_in(*base, p.from);
      const int deg = base->stored(x).degree;
      CatCell v;
      if (deg == 0)
        v = make_cell(lookup(ws_.categories, p.to, "category"));
      else if (deg == 1)
        v = make_cell(lookup(ws_.functors, p.to, "functor"));
      else
        v = lookup(ws_.modifications, p.to, "modification");
      if (v->degree() != deg) throw DslError(p.to.span, "value has the wrong dimension for '" + p.from.name + "'");
      if (P.cells[x]) throw DslError(p.from.span, "'" + p.from.name + "' given twice");
      P.cells[x] = v;
      if (deg == 0) P.objects[base->object_index(Cell{x, 0})] = v;
    }
    for (int deg = 0; deg <= base->top_degree(); ++deg)
      for (auto x : base->stored_of_degree(deg)) {
        if (P.cells[x]) continue;
        for (std::uint32_t y = 0; y < base->size(); ++y)
          if (base->stored(y).identity == x && P.cells[y]) {
            P.cells[x] = cat_identity(P.cells[y]);
            break;
          }
        if (!P.cells[x])
          throw DslError(d.name.span, "presheaf " + P.name + " has no value at '" + base->stored(x).name + "'");
      }
    for (auto x : base->stored_of_degree(0)) P.cells[x] = nullptr;  // objects live in P.objects
    ws_.presheaves[d.name.name] = std::make_shared<const CatValuedPresheaf>(std::move(P));
  }

  void add(const DualityDecl& d) {
    claim(d.name);
    ConcreteDuality dual;
    dual.adjunction = lookup(ws_.adjunctions, d.adjunction, "adjunction");
    dual.U = lookup(ws_.presheaves, d.U, "presheaf");
    dual.V = lookup(ws_.presheaves, d.V, "presheaf");
    dual.A_tilde = object_in(*dual.U->base, d.A_tilde);
    dual.B_tilde = object_in(*dual.V->base, d.B_tilde);
    ws_.dualities[d.name.name] = dual;
  }

  Workspace ws_;
  std::set<std::string> names_;
};

}  // namespace

std::string quote_name(const std::string& name) {
  bool bare = !name.empty() && std::all_of(name.begin(), name.end(), word_char) && !keywords().count(name);
  if (bare) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

Presentation parse(const std::string& source) { return Parser(lex(source)).file(); }

std::string print(const Presentation& p) {
  std::ostringstream o;
  bool first = true;
  for (const auto& d : p.decls) {
    if (!first) o << "\n";
    first = false;
    std::visit(
        [&o](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, CategoryDecl>) {
            if (x.opposite_of) {
              o << "category " << q(x.name) << " = opposite " << q(*x.opposite_of) << "\n";
              return;
            }
            o << "category " << q(x.name) << " max_degree " << x.max_degree << (x.strict ? " strict" : "") << " {\n";
            for (const auto& item : x.items) {
              if (auto* c = std::get_if<CellItem>(&item))
                print_cell(o, "cell", *c);
              else if (auto* id = std::get_if<IdentityItem>(&item))
                o << "  identity " << q(id->cell) << " = " << q(id->identity) << "\n";
              else if (auto* ci = std::get_if<ComposeItem>(&item))
                o << "  compose " << ci->k << " : " << q(ci->f) << " . " << q(ci->g) << " = " << q(ci->result) << "\n";
              else
                o << "  derive\n";
            }
            o << "}\n";
          } else if constexpr (std::is_same_v<T, FunctorDecl>) {
            o << "functor " << q(x.name) << " : " << q(x.source) << " -> " << q(x.target) << " {\n";
            print_pairs(o, "map", "=>", x.maps);
            o << "}\n";
          } else if constexpr (std::is_same_v<T, ModificationDecl>) {
            o << "modification " << q(x.name) << " level " << x.level << " : " << q(x.dom) << " => " << q(x.cod)
              << " {\n";
            print_pairs(o, "at", "=", x.components);
            o << "}\n";
          } else if constexpr (std::is_same_v<T, GraphDecl>) {
            o << "graph " << q(x.name) << " {\n";
            for (const auto& n : x.nodes) print_cell(o, "node", n);
            o << "}\n";
          } else if constexpr (std::is_same_v<T, DiagramDecl>) {
            o << "diagram " << q(x.name) << " : " << q(x.graph) << " -> " << q(x.target) << " {\n";
            print_pairs(o, "map", "=>", x.maps);
            o << "}\n";
          } else if constexpr (std::is_same_v<T, ConeDecl>) {
            o << "cone " << q(x.name) << " : " << q(x.diagram) << " at " << q(x.vertex)
              << (x.colimit ? " colimit" : "") << " {\n";
            print_pairs(o, "edge", "=", x.edges);
            o << "}\n";
          } else if constexpr (std::is_same_v<T, AdjunctionDecl>) {
            o << "adjunction " << q(x.name) << " : " << q(x.left) << " -| " << q(x.right) << " {\n";
            print_pairs(o, "unit", "=", x.unit);
            print_pairs(o, "counit", "=", x.counit);
            o << "}\n";
          } else if constexpr (std::is_same_v<T, PresheafDecl>) {
            if (x.kind == PresheafDecl::Kind::table) {
              o << "presheaf " << q(x.name) << " on " << q(x.base) << " {\n";
              print_pairs(o, "at", "=", x.values);
              o << "}\n";
            } else {
              o << "presheaf " << q(x.name) << " = " << (x.kind == PresheafDecl::Kind::hom ? "hom " : "hom_op ")
                << q(x.base) << " " << q(*x.object) << "\n";
            }
          } else {
            o << "duality " << q(x.name) << " : " << q(x.adjunction) << " {\n"
              << "  forget " << q(x.U) << " " << q(x.V) << "\n"
              << "  tilde " << q(x.A_tilde) << " " << q(x.B_tilde) << "\n}\n";
          }
        },
        d);
  }
  return o.str();
}

const CatRef& Workspace::category(const std::string& name) const {
  auto it = categories.find(name);
  if (it == categories.end()) throw std::invalid_argument("no category named '" + name + "'");
  return it->second;
}

Workspace resolve(const Presentation& p) { return Resolver().run(p); }

CategoryDecl category_decl(const FiniteOmegaCat& cat) { return category_decl(cat, cat.name()); }

CategoryDecl category_decl(const FiniteOmegaCat& cat, const std::string& name) {
  CategoryDecl d;
  d.name = {name, {}};
  d.max_degree = cat.top_degree();
  d.strict = cat.declared_strict();
  auto nm = [&](std::uint32_t i) { return Named{cat.stored(i).name, {}}; };
  for (std::uint32_t i = 0; i < cat.size(); ++i) {
    const auto& s = cat.stored(i);
    CellItem c{nm(i), s.degree, std::nullopt, std::nullopt};
    if (s.dom != kNone) {
      c.dom = nm(s.dom);
      c.cod = nm(s.cod);
    }
    d.items.push_back(c);
  }
  for (std::uint32_t i = 0; i < cat.size(); ++i)
    if (cat.stored(i).identity != kNone) d.items.push_back(IdentityItem{nm(i), nm(cat.stored(i).identity)});
  for (const auto& e : cat.compose_entries()) d.items.push_back(ComposeItem{e.k, nm(e.f), nm(e.g), nm(e.result)});
  return d;
}

FunctorDecl functor_decl(const FunctorData& f, const std::string& name, const std::string& source,
                         const std::string& target) {
  FunctorDecl d;
  d.name = {name, {}};
  d.source = {source, {}};
  d.target = {target, {}};
  for (std::uint32_t i = 0; i < f.source->size(); ++i)
    d.maps.push_back({{f.source->stored(i).name, {}}, {f.target->name_of(f.map[i]), {}}});
  return d;
}

}  // namespace ocat::dsl

namespace ocat::dsl {

namespace {

std::string pointer_key(const char* tag, const void* p) {
  return std::string(tag) + std::to_string(reinterpret_cast<std::uintptr_t>(p));
}

}  // namespace

std::string Exporter::fresh(const std::string& preferred) {
  std::string base = preferred.empty() ? "x" : preferred;
  std::string name = base;
  for (int i = 2; !used_.insert(name).second; ++i) name = base + "_" + std::to_string(i);
  return name;
}

std::string Exporter::category(const CatRef& cat, const std::string& preferred) {
  auto key = pointer_key("C", cat.get());
  if (auto it = seen_.find(key); it != seen_.end()) return it->second;
  std::string name = fresh(preferred.empty() ? cat->name() : preferred);
  out_.decls.push_back(category_decl(*cat, name));
  return seen_[key] = name;
}

std::string Exporter::functor(const FunctorData& f, const std::string& preferred) {
  auto key = "F" + cat_key(make_cell(f)) + pointer_key("@", f.source.get()) + pointer_key(">", f.target.get());
  if (auto it = seen_.find(key); it != seen_.end()) return it->second;
  std::string s = category(f.source), t = category(f.target);
  std::string name = fresh(preferred.empty() ? (f.name.empty() ? "F" : f.name) : preferred);
  out_.decls.push_back(functor_decl(f, name, s, t));
  return seen_[key] = name;
}

std::string Exporter::cell(const CatCell& x) {
  if (x->is_category()) return category(x->category());
  if (x->is_functor()) return functor(x->functor());
  const auto& m = x->modification();
  auto key = "M" + cat_key(x) + pointer_key("@", m.source().get()) + pointer_key(">", m.target().get());
  if (auto it = seen_.find(key); it != seen_.end()) return it->second;
  std::string dom = cell(m.dom), cod = cell(m.cod);
  ModificationDecl d;
  d.name = {fresh(m.name.empty() ? "M" : m.name), {}};
  d.level = m.level;
  d.dom = {dom, {}};
  d.cod = {cod, {}};
  const auto objs = m.source()->objects();
  for (std::size_t i = 0; i < objs.size(); ++i)
    d.components.push_back({{m.source()->name_of(objs[i]), {}}, {m.target()->name_of(m.components[i]), {}}});
  out_.decls.push_back(d);
  return seen_[key] = d.name.name;
}

std::string Exporter::presheaf(const PresheafRef& p, const std::string& preferred) {
  auto key = pointer_key("P", p.get());
  if (auto it = seen_.find(key); it != seen_.end()) return it->second;
  PresheafDecl d;
  d.base = {category(p->base), {}};
  const FiniteOmegaCat& B = *p->base;
  for (std::uint32_t i = 0; i < B.size(); ++i) {
    Cell x{i, 0};
    d.values.push_back({{B.stored(i).name, {}}, {cell(p->at(x)), {}}});
  }
  d.name = {fresh(preferred.empty() ? p->name : preferred), {}};
  out_.decls.push_back(d);
  return seen_[key] = d.name.name;
}

std::string Exporter::adjunction(const AdjunctionData& adj, const std::string& preferred) {
  AdjunctionDecl d;
  d.left = {functor(adj.F), {}};
  d.right = {functor(adj.G), {}};
  const FiniteOmegaCat &L = *adj.left(), &R = *adj.right();
  const auto lo = L.objects(), ro = R.objects();
  for (std::size_t i = 0; i < lo.size(); ++i) d.unit.push_back({{L.name_of(lo[i]), {}}, {L.name_of(adj.eta[i]), {}}});
  for (std::size_t i = 0; i < ro.size(); ++i)
    d.counit.push_back({{R.name_of(ro[i]), {}}, {R.name_of(adj.eps[i]), {}}});
  d.name = {fresh(preferred.empty() ? adj.name : preferred), {}};
  out_.decls.push_back(d);
  return d.name.name;
}

std::string Exporter::graph(const GraphData& g, const std::string& preferred) {
  GraphDecl d;
  d.name = {fresh(preferred.empty() ? g.name : preferred), {}};
  for (const auto& n : g.nodes) {
    CellItem c{{n.name, {}}, n.degree, std::nullopt, std::nullopt};
    if (n.dom >= 0) {
      c.dom = Named{g.nodes[static_cast<std::size_t>(n.dom)].name, {}};
      c.cod = Named{g.nodes[static_cast<std::size_t>(n.cod)].name, {}};
    }
    d.nodes.push_back(c);
  }
  out_.decls.push_back(d);
  return d.name.name;
}

std::string Exporter::diagram(const DiagramData& D, const std::string& preferred) {
  DiagramDecl d;
  d.target = {category(D.target), {}};
  d.graph = {graph(D.graph), {}};
  for (std::size_t i = 0; i < D.graph.nodes.size(); ++i)
    d.maps.push_back({{D.graph.nodes[i].name, {}}, {D.target->name_of(D.assignment[i]), {}}});
  d.name = {fresh(preferred.empty() ? "D" : preferred), {}};
  out_.decls.push_back(d);
  return d.name.name;
}

std::string Exporter::cone(const DiagramData& D, const ConeData& c, const std::string& preferred) {
  ConeDecl d;
  d.diagram = {diagram(D), {}};
  d.vertex = {D.target->name_of(c.vertex), {}};
  d.colimit = c.direction == ConeKind::colimit;
  const auto objs = D.graph.objects();
  for (std::size_t i = 0; i < objs.size(); ++i)
    d.edges.push_back({{D.graph.nodes[static_cast<std::size_t>(objs[i])].name, {}}, {D.target->name_of(c.edges[i]), {}}});
  d.name = {fresh(preferred.empty() ? "cone" : preferred), {}};
  out_.decls.push_back(d);
  return d.name.name;
}

std::string Exporter::duality(const ConcreteDuality& dual, const std::string& preferred) {
  DualityDecl d;
  d.adjunction = {adjunction(dual.adjunction), {}};
  d.U = {presheaf(dual.U, "U"), {}};
  d.V = {presheaf(dual.V, "V"), {}};
  d.A_tilde = {dual.U->base->name_of(dual.A_tilde), {}};
  d.B_tilde = {dual.V->base->name_of(dual.B_tilde), {}};
  d.name = {fresh(preferred.empty() ? "duality" : preferred), {}};
  out_.decls.push_back(d);
  return d.name.name;
}

}  // namespace ocat::dsl

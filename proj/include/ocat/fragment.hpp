#pragma once
// Turns a globular family of values with composites and identities (∞-CAT
// cells, presheaf modifications, diagram modifications) into a finite table,
// so the equivalence engine and validators run on it unchanged.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ocat/category.hpp"

namespace ocat {

template <class T>
struct FragmentSource {
  std::string name = "fragment";
  int top_degree = 1;
  std::vector<T> objects;
  // All cells of the next degree from a to b (a, b parallel or objects).
  std::function<std::vector<T>(const T& a, const T& b)> higher;
  std::function<std::optional<T>(int k, const T& f, const T& g)> compose;
  std::function<T(const T& x)> identity;
  std::function<std::string(const T& x)> key;
  std::function<std::string(const T& x)> label;
};

template <class T>
struct Fragment {
  FiniteOmegaCat cat;
  std::vector<T> values;  // by stored index
  std::map<std::string, std::uint32_t> index;

  std::optional<Cell> find(const std::string& key) const {
    auto it = index.find(key);
    if (it == index.end()) return std::nullopt;
    return Cell{it->second, 0};
  }
};

// Throws std::logic_error if identities or composites leave the enumerated
// family, which would mean `higher` missed cells.
template <class T>
Fragment<T> build_fragment(const FragmentSource<T>& src) {
  Fragment<T> fr{FiniteOmegaCat(src.name, src.top_degree), {}, {}};
  auto add = [&](const T& v, int degree, std::uint32_t dom, std::uint32_t cod) {
    std::string k = src.key(v);
    if (fr.index.count(k)) return;
    std::string label = src.label(v);
    std::string unique = label;
    for (int n = 2; fr.cat.find(unique); ++n) unique = label + "'" + std::to_string(n);
    auto i = fr.cat.add_cell(unique, degree, dom, cod);
    fr.index.emplace(k, i);
    fr.values.push_back(v);
  };
  for (const T& o : src.objects) add(o, 0, kNone, kNone);
  for (int deg = 0; deg < src.top_degree; ++deg) {
    auto layer = fr.cat.stored_of_degree(deg);
    for (auto a : layer)
      for (auto b : layer) {
        if (deg > 0) {
          const auto &sa = fr.cat.stored(a), &sb = fr.cat.stored(b);
          if (sa.dom != sb.dom || sa.cod != sb.cod) continue;
        }
        for (const T& v : src.higher(fr.values[a], fr.values[b])) add(v, deg + 1, a, b);
      }
  }
  auto lookup = [&](const T& v, const char* what) {
    auto it = fr.index.find(src.key(v));
    if (it == fr.index.end()) throw std::logic_error(std::string("fragment '") + src.name + "' is not closed under " + what);
    return it->second;
  };
  for (std::uint32_t i = 0; i < fr.cat.size(); ++i)
    if (fr.cat.stored(i).degree < src.top_degree) fr.cat.set_identity(i, lookup(src.identity(fr.values[i]), "identities"));
  for (int deg = 1; deg <= src.top_degree; ++deg) {
    const auto& layer = fr.cat.stored_of_degree(deg);
    for (int k = 1; k <= deg; ++k)
      for (auto f : layer)
        for (auto g : layer) {
          if (!fr.cat.composable(k, {f, 0}, {g, 0})) continue;
          auto r = src.compose(k, fr.values[f], fr.values[g]);
          if (!r) throw std::logic_error("fragment '" + src.name + "': composable pair without composite");
          fr.cat.set_compose(k, f, g, lookup(*r, "composites"));
        }
  }
  return fr;
}

}  // namespace ocat

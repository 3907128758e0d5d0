#pragma once
// Independent reference computations used to freeze expected values. None of
// them calls into the library's linear algebra; they work on plain integer and
// rational tables.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <vector>

namespace oracle {

using Int = mpz_class;
using Q = mpq_class;
using Matrix = std::vector<std::vector<Q>>;

// Rank by fraction-free (Bareiss) elimination on the integer matrix obtained
// by clearing denominators row by row. Each pivot is a nonzero minor.
inline std::size_t minor_rank(const Matrix& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    Int l = 1;
    for (const auto& x : m[i]) l = lcm(l, Int(x.get_den()));
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = Int(m[i][j].get_num()) * (l / Int(m[i][j].get_den()));
  }
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

inline Matrix zeros(std::size_t r, std::size_t c) { return Matrix(r, std::vector<Q>(c)); }

inline Matrix stack(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  Matrix out = zeros(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t t = 0; t < b.size(); ++t)
      if (a[i][t] != 0)
        for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][t] * b[t][j];
  return out;
}

// ---- monomial Spencer complexes ---------------------------------------------

using Mono = std::vector<int>;

inline void all_monos(int n, int d, Mono& cur, std::vector<Mono>& out) {
  if (static_cast<int>(cur.size()) == n) {
    if (d == 0) out.push_back(cur);
    return;
  }
  for (int e = 0; e <= d; ++e) {
    cur.push_back(e);
    all_monos(n, d - e, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Mono> monos(int n, int d) {
  std::vector<Mono> out;
  if (d < 0) return out;
  Mono cur;
  all_monos(n, d, cur, out);
  return out;
}

inline bool divides(const Mono& a, const Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// For a symbol killing the listed degree-q monomials (k = 1), the r-th
// prolongation is spanned by the degree q+r monomials not divisible by any
// killed one; below level 0 everything survives.
inline std::vector<Mono> surviving(int n, int q, int r, const std::vector<Mono>& killed) {
  std::vector<Mono> out;
  for (const auto& m : monos(n, q + r)) {
    bool keep = true;
    if (r >= 0)
      for (const auto& k : killed) keep = keep && !divides(k, m);
    if (keep) out.push_back(m);
  }
  return out;
}

inline std::vector<std::vector<int>> subsets(int n, int l) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    if (static_cast<int>(s.size()) == l) out.push_back(s);
  }
  return out;
}

// The Koszul differential between the monomial-spanned terms, built directly
// from P ⊗ ω ↦ Σ ∂_i P ⊗ dx_i ∧ ω.
inline Matrix monomial_delta(int n, int q, int r, int l, const std::vector<Mono>& killed) {
  auto src = surviving(n, q, r - l, killed);
  auto tgt = surviving(n, q, r - l - 1, killed);
  auto fs = subsets(n, l), ft = subsets(n, l + 1);
  std::map<std::pair<Mono, std::vector<int>>, std::size_t> row;
  for (const auto& m : tgt)
    for (const auto& f : ft) row.emplace(std::make_pair(m, f), row.size());
  Matrix out = zeros(row.size(), src.size() * fs.size());
  std::size_t col = 0;
  for (const auto& m : src)
    for (const auto& f : fs) {
      for (int i = 0; i < n; ++i) {
        if (m[static_cast<std::size_t>(i)] == 0 || std::count(f.begin(), f.end(), i)) continue;
        Mono d = m;
        int coef = d[static_cast<std::size_t>(i)]--;
        int below = 0;
        for (int t : f) below += t < i;
        if (below % 2) coef = -coef;
        std::vector<int> g = f;
        g.push_back(i);
        std::sort(g.begin(), g.end());
        auto it = row.find({d, g});
        if (it == row.end()) throw std::logic_error("oracle: δ leaves the complex");
        out[it->second][col] += coef;
      }
      ++col;
    }
  return out;
}

inline std::vector<std::size_t> monomial_cohomology(int n, int q, int r, const std::vector<Mono>& killed) {
  std::vector<std::size_t> dims, ranks;
  for (int l = 0; l <= n; ++l) dims.push_back(surviving(n, q, r - l, killed).size() * subsets(n, l).size());
  for (int l = 0; l < n; ++l) ranks.push_back(minor_rank(monomial_delta(n, q, r, l, killed)));
  ranks.push_back(0);
  std::vector<std::size_t> h;
  for (std::size_t l = 0; l < dims.size(); ++l) h.push_back(dims[l] - ranks[l] - (l ? ranks[l - 1] : 0));
  return h;
}

// ---- truncated polynomial algebras -----------------------------------------

// Coefficient vectors of ℚ[x]/(x^m).
using Poly = std::vector<Q>;

inline Poly times(const Poly& a, const Poly& b) {
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Poly xpow(std::size_t m, std::size_t k) {
  Poly p(m);
  if (k < m) p[k] = 1;
  return p;
}

// Operators on P = (ℚ[x]/(x^m))^copies to A, written as functions of the
// coefficient vector; δ_{x^k} built by hand.
using Op = std::vector<std::vector<Q>>;  // m × (m·copies)

inline Op delta(std::size_t m, std::size_t copies, std::size_t k, const Op& D) {
  Op out = zeros(m, m * copies);
  for (std::size_t c = 0; c < m * copies; ++c) {
    Poly img(m);
    for (std::size_t r = 0; r < m; ++r) img[r] = D[r][c];
    Poly left = times(xpow(m, k), img);
    // x^k acting on the basis vector x^j of one copy.
    const std::size_t copy = c / m, j = c % m;
    Poly right(m);
    if (j + k < m)
      for (std::size_t r = 0; r < m; ++r) right[r] = D[r][copy * m + j + k];
    for (std::size_t r = 0; r < m; ++r) out[r][c] = left[r] - right[r];
  }
  return out;
}

// dim Diff_s(P, A) as the nullity of every (s+1)-fold δ over index multisets.
inline std::size_t diff_dim(std::size_t m, std::size_t copies, int s) {
  const std::size_t N = m * m * copies;
  Matrix constraints;
  for (std::size_t e = 0; e < N; ++e) {
    Op D = zeros(m, m * copies);
    D[e / (m * copies)][e % (m * copies)] = 1;
    std::vector<Op> cur{D};
    for (int t = 0; t <= s; ++t) {
      std::vector<Op> next;
      for (const auto& op : cur)
        for (std::size_t k = 1; k < m; ++k) next.push_back(delta(m, copies, k, op));
      cur = next;
    }
    // Column e of the stacked constraint matrix.
    std::size_t row = 0;
    for (const auto& op : cur)
      for (const auto& r : op)
        for (const auto& v : r) {
          if (constraints.size() <= row) constraints.push_back(std::vector<Q>(N));
          constraints[row++][e] = v;
        }
  }
  return N - minor_rank(constraints);
}

// dim Jet^s(P) = dim A ⊗ P − dim μ^{s+1}, with δ^b acting on A ⊗ P as
// multiplication by b⊗1 − 1⊗b.
inline std::size_t jet_dim(std::size_t m, std::size_t copies, int s) {
  const std::size_t dp = m * copies, wide = m * dp;
  auto apply = [&](std::size_t k, const std::vector<Q>& v) {
    std::vector<Q> out(wide);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t p = 0; p < dp; ++p) {
        const Q& c = v[i * dp + p];
        if (c == 0) continue;
        if (i + k < m) out[(i + k) * dp + p] += c;
        const std::size_t copy = p / m, j = p % m;
        if (j + k < m) out[i * dp + copy * m + j + k] -= c;
      }
    return out;
  };
  std::vector<std::vector<Q>> cur;
  for (std::size_t e = 0; e < wide; ++e) {
    std::vector<Q> v(wide);
    v[e] = 1;
    cur.push_back(v);
  }
  for (int t = 0; t <= s; ++t) {
    std::vector<std::vector<Q>> next;
    for (const auto& v : cur)
      for (std::size_t k = 1; k < m; ++k) next.push_back(apply(k, v));
    cur = next;
  }
  return wide - minor_rank(cur);
}

}  // namespace oracle

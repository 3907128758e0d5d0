#include "ocat/jetdiff.hpp"

#include <functional>
#include <stdexcept>

namespace ocat {

namespace {

std::vector<Rational> unit_vector(std::size_t n, std::size_t i) {
  std::vector<Rational> v(n);
  v[i] = 1;
  return v;
}

// M ∘ − on maps X → Y, for M: Y → Y' and dim X = dx.
QMatrix post_op(const QMatrix& M, std::size_t dx) {
  QMatrix op(M.rows() * dx, M.cols() * dx);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t t = 0; t < M.cols(); ++t)
      if (M(i, t) != 0)
        for (std::size_t j = 0; j < dx; ++j) op(i * dx + j, t * dx + j) = M(i, t);
  return op;
}

// − ∘ M on maps X → Y, for M: Z → X and dim Y = dy.
QMatrix pre_op(const QMatrix& M, std::size_t dy) {
  const std::size_t a = M.rows(), z = M.cols();
  QMatrix op(dy * z, dy * a);
  for (std::size_t i = 0; i < dy; ++i)
    for (std::size_t t = 0; t < a; ++t)
      for (std::size_t j = 0; j < z; ++j)
        if (M(t, j) != 0) op(i * z + j, i * a + t) = M(t, j);
  return op;
}

QMatrix kron(const QMatrix& X, const QMatrix& Y) {
  QMatrix out(X.rows() * Y.rows(), X.cols() * Y.cols());
  for (std::size_t i = 0; i < X.rows(); ++i)
    for (std::size_t j = 0; j < X.cols(); ++j) {
      if (X(i, j) == 0) continue;
      for (std::size_t p = 0; p < Y.rows(); ++p)
        for (std::size_t q = 0; q < Y.cols(); ++q) out(i * Y.rows() + p, j * Y.cols() + q) = X(i, j) * Y(p, q);
    }
  return out;
}

// δ_{e_i} as an operator on vectorised maps P → Q.
QMatrix delta_operator(const FiniteModuleData& P, const FiniteModuleData& Q, std::size_t i) {
  return post_op(Q.actions[i], P.dim) - pre_op(P.actions[i], Q.dim);
}

void require_same_algebra(const FiniteModuleData& P, const FiniteModuleData& Q) {
  if (!P.algebra || !Q.algebra) throw std::invalid_argument("module without an algebra");
  if (P.algebra != Q.algebra && P.algebra->structure != Q.algebra->structure)
    throw std::invalid_argument("modules " + P.name + " and " + Q.name + " live over different algebras");
}

// {v : op_i v ∈ target for all i}.
Subspace preimage_all(const std::vector<QMatrix>& ops, const Subspace& target, std::size_t ambient) {
  QMatrix ann = target.annihilator().basis();
  QMatrix constraints(0, ambient);
  if (ann.rows() > 0)
    for (const auto& op : ops) constraints.append_rows(ann * op);
  return constraints.rows() == 0 ? Subspace::full(ambient) : kernel(constraints);
}

bool preserves(const QMatrix& op, const Subspace& s) {
  for (std::size_t b = 0; b < s.dim(); ++b)
    if (!s.contains(op.apply(s.basis().row(b)))) return false;
  return true;
}

// Inverse of a square matrix by solving against the identity.
std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  QMatrix inv(m.rows(), m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto x = solve(m, unit_vector(m.rows(), c));
    if (!x) return std::nullopt;
    for (std::size_t r = 0; r < m.rows(); ++r) inv(r, c) = (*x)[r];
  }
  if (!(inv * m == QMatrix::identity(m.rows()))) return std::nullopt;
  return inv;
}

// Δ ↦ ([a ⊗ p] ↦ aΔ(p)) as a map from vectorised P → Q to vectorised A⊗P → Q.
QMatrix extend_operator(const FiniteModuleData& P, const FiniteModuleData& Q) {
  const std::size_t m = P.algebra->dim(), dp = P.dim, dq = Q.dim, wide = m * dp;
  QMatrix op(dq * wide, dq * dp);
  for (std::size_t r = 0; r < dq; ++r)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t p = 0; p < dp; ++p)
        for (std::size_t t = 0; t < dq; ++t)
          if (Q.actions[i](r, t) != 0) op(r * wide + i * dp + p, t * dp + p) = Q.actions[i](r, t);
  return op;
}

QMatrix columns_of(const Subspace& s) { return s.basis().transpose(); }

}  // namespace

std::vector<Rational> FiniteAlgebra::multiply(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
  std::vector<Rational> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j] == 0) continue;
      for (std::size_t k = 0; k < dim(); ++k) out[k] += a[i] * b[j] * structure[i][j][k];
    }
  }
  return out;
}

QMatrix FiniteAlgebra::multiplication(const std::vector<Rational>& a) const {
  QMatrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    auto col = multiply(a, basis_vector(j));
    for (std::size_t k = 0; k < dim(); ++k) m(k, j) = col[k];
  }
  return m;
}

std::vector<Rational> FiniteAlgebra::basis_vector(std::size_t i) const { return unit_vector(dim(), i); }

CheckReport check_algebra(const FiniteAlgebra& a) {
  CheckReport rep;
  rep.subject = a.name;
  const std::size_t n = a.dim();
  bool shape = a.unit.size() == n && a.structure.size() == n;
  for (const auto& row : a.structure) {
    shape = shape && row.size() == n;
    for (const auto& v : row) shape = shape && v.size() == n;
  }
  if (!shape) {
    rep.fail("algebra.shape", "structure constants or unit have the wrong size");
    return rep;
  }
  rep.pass("algebra.shape");
  for (std::size_t i = 0; i < n; ++i) {
    auto ei = a.basis_vector(i);
    if (a.multiply(a.unit, ei) != ei) rep.fail("algebra.unit", "unit does not act trivially", {a.labels[i]});
    for (std::size_t j = 0; j < n; ++j) {
      auto ej = a.basis_vector(j);
      if (a.multiply(ei, ej) != a.multiply(ej, ei))
        rep.fail("algebra.commutative", "e_i e_j ≠ e_j e_i", {a.labels[i], a.labels[j]});
      for (std::size_t k = 0; k < n; ++k) {
        auto ek = a.basis_vector(k);
        if (a.multiply(a.multiply(ei, ej), ek) != a.multiply(ei, a.multiply(ej, ek)))
          rep.fail("algebra.associative", "(e_i e_j) e_k ≠ e_i (e_j e_k)", {a.labels[i], a.labels[j], a.labels[k]});
      }
    }
  }
  rep.pass("algebra.unit");
  rep.pass("algebra.commutative");
  rep.pass("algebra.associative");
  return rep;
}

QMatrix FiniteModuleData::act(const std::vector<Rational>& a) const {
  QMatrix m(dim, dim);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) m = m + a[i] * actions[i];
  return m;
}

CheckReport check_module(const FiniteModuleData& m) {
  CheckReport rep;
  rep.subject = m.name;
  if (!m.algebra || m.actions.size() != m.algebra->dim()) {
    rep.fail("module.shape", "one action matrix per algebra basis element is required");
    return rep;
  }
  for (const auto& a : m.actions)
    if (a.rows() != m.dim || a.cols() != m.dim) {
      rep.fail("module.shape", "action matrix is not dim × dim");
      return rep;
    }
  rep.pass("module.shape");
  const FiniteAlgebra& A = *m.algebra;
  if (!(m.act(A.unit) == QMatrix::identity(m.dim))) rep.fail("module.unit", "unit does not act as the identity");
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      if (!(m.actions[i] * m.actions[j] == m.act(A.multiply(A.basis_vector(i), A.basis_vector(j)))))
        rep.fail("module.action", "e_i(e_j p) ≠ (e_i e_j)p", {A.labels[i], A.labels[j]});
  rep.pass("module.unit");
  rep.pass("module.action");
  return rep;
}

FiniteAlgebra truncated_polynomials(int m) {
  if (m < 1) throw std::invalid_argument("ℚ[x]/(x^m) needs m >= 1");
  FiniteAlgebra a;
  a.name = m == 1 ? "Q" : "Q[x]/(x^" + std::to_string(m) + ")";
  const auto M = static_cast<std::size_t>(m);
  for (std::size_t i = 0; i < M; ++i) a.labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  a.structure.assign(M, std::vector<std::vector<Rational>>(M, std::vector<Rational>(M)));
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; i + j < M; ++j) a.structure[i][j][i + j] = 1;
  a.unit = unit_vector(M, 0);
  return a;
}

FiniteModuleData regular_module(const AlgebraRef& a) {
  FiniteModuleData m{"A", a, a->dim(), {}};
  for (std::size_t i = 0; i < a->dim(); ++i) m.actions.push_back(a->multiplication(a->basis_vector(i)));
  return m;
}

FiniteModuleData direct_sum(const FiniteModuleData& p, const FiniteModuleData& q) {
  require_same_algebra(p, q);
  FiniteModuleData s{p.name + "⊕" + q.name, p.algebra, p.dim + q.dim, {}};
  for (std::size_t i = 0; i < p.actions.size(); ++i) {
    QMatrix m(s.dim, s.dim);
    for (std::size_t r = 0; r < p.dim; ++r)
      for (std::size_t c = 0; c < p.dim; ++c) m(r, c) = p.actions[i](r, c);
    for (std::size_t r = 0; r < q.dim; ++r)
      for (std::size_t c = 0; c < q.dim; ++c) m(p.dim + r, p.dim + c) = q.actions[i](r, c);
    s.actions.push_back(m);
  }
  return s;
}

QMatrix delta_op(const FiniteModuleData& P, const FiniteModuleData& Q, const std::vector<Rational>& a, const QMatrix& D) {
  require_same_algebra(P, Q);
  if (D.rows() != Q.dim || D.cols() != P.dim) throw DimensionError("operator shape does not match the modules");
  return Q.act(a) * D - D * P.act(a);
}

std::optional<int> operator_order(const QMatrix& D, const FiniteModuleData& P, const FiniteModuleData& Q, int max_r) {
  const std::size_t m = P.algebra->dim();
  if (max_r < 0) max_r = 2 * static_cast<int>(m);
  // Depth-first over nondecreasing index tuples; D_t is the partial composite.
  for (int r = 0; r <= max_r; ++r) {
    bool all_zero = true;
    std::function<void(int, std::size_t, const QMatrix&)> go = [&](int left, std::size_t from, const QMatrix& cur) {
      if (!all_zero) return;
      if (left == 0) {
        if (!cur.is_zero()) all_zero = false;
        return;
      }
      for (std::size_t i = from; i < m && all_zero; ++i)
        go(left - 1, i, delta_op(P, Q, P.algebra->basis_vector(i), cur));
    };
    go(r + 1, 0, D);
    if (all_zero) return r;
  }
  return std::nullopt;
}

Subspace module_homs(const FiniteModuleData& P, const FiniteModuleData& Q) {
  require_same_algebra(P, Q);
  QMatrix constraints(0, P.dim * Q.dim);
  for (std::size_t i = 0; i < P.algebra->dim(); ++i) constraints.append_rows(delta_operator(P, Q, i));
  return constraints.rows() == 0 ? Subspace::full(P.dim * Q.dim) : kernel(constraints);
}

Subspace diff_space(const FiniteModuleData& P, const FiniteModuleData& Q, int s) {
  require_same_algebra(P, Q);
  const std::size_t N = P.dim * Q.dim, m = P.algebra->dim();
  std::vector<QMatrix> ops;
  for (std::size_t i = 0; i < m; ++i) ops.push_back(delta_operator(P, Q, i));
  Subspace cur(N);
  for (int t = 0; t <= s; ++t) {
    Subspace next = preimage_all(ops, cur, N);
    if (!next.contains(cur)) throw std::logic_error("Diff filtration is not increasing");
    cur = next;
  }
  for (std::size_t i = 0; i < m; ++i)
    if (!preserves(post_op(Q.actions[i], P.dim), cur) || !preserves(pre_op(P.actions[i], Q.dim), cur))
      throw std::logic_error("Diff_s is not closed under module multiplication");
  return cur;
}

std::vector<Rational> flatten(const QMatrix& m) {
  std::vector<Rational> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

QMatrix unflatten(const std::vector<Rational>& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw DimensionError("unflatten: size mismatch");
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
  return m;
}

Subspace jet_relations(const FiniteModuleData& P, int s) {
  const FiniteAlgebra& A = *P.algebra;
  const std::size_t wide = A.dim() * P.dim;
  std::vector<QMatrix> ops;
  for (std::size_t b = 0; b < A.dim(); ++b)
    ops.push_back(kron(A.multiplication(A.basis_vector(b)), QMatrix::identity(P.dim)) -
                  kron(QMatrix::identity(A.dim()), P.actions[b]));
  Subspace cur = Subspace::full(wide);
  for (int t = 0; t <= s; ++t) {
    QMatrix images(0, wide);
    for (const auto& op : ops) images.append_rows((op * columns_of(cur)).transpose());
    Subspace next = Subspace::span(images);
    if (!cur.contains(next)) throw std::logic_error("jet relations are not decreasing");
    cur = next;
  }
  return cur;
}

JetModule jet_module(const FiniteModuleData& P, int s) {
  const FiniteAlgebra& A = *P.algebra;
  const std::size_t wide = A.dim() * P.dim;
  JetModule J;
  J.relations = jet_relations(P, s);
  std::vector<bool> pivot(wide, false);
  for (auto p : J.relations.pivots()) pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < wide; ++c)
    if (!pivot[c]) free.push_back(c);
  J.projection = QMatrix(free.size(), wide);
  J.section = QMatrix(wide, free.size());
  for (std::size_t c = 0; c < wide; ++c) {
    auto red = J.relations.reduce(unit_vector(wide, c));
    for (std::size_t t = 0; t < free.size(); ++t) J.projection(t, c) = red[free[t]];
  }
  for (std::size_t t = 0; t < free.size(); ++t) J.section(free[t], t) = 1;
  J.module = FiniteModuleData{"Jet^" + std::to_string(s) + "(" + P.name + ")", P.algebra, free.size(), {}};
  for (std::size_t b = 0; b < A.dim(); ++b)
    J.module.actions.push_back(J.projection * kron(A.multiplication(A.basis_vector(b)), QMatrix::identity(P.dim)) *
                               J.section);
  QMatrix one_tensor(wide, P.dim);
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t p = 0; p < P.dim; ++p) one_tensor(i * P.dim + p, p) = A.unit[i];
  J.jet = J.projection * one_tensor;
  return J;
}

FiniteModuleData map_module(const FiniteModuleData& P, const FiniteModuleData& Q, const Subspace& maps, MapSide side,
                            std::string name) {
  require_same_algebra(P, Q);
  FiniteModuleData M{std::move(name), P.algebra, maps.dim(), {}};
  for (std::size_t i = 0; i < P.algebra->dim(); ++i) {
    QMatrix op = side == MapSide::left ? post_op(Q.actions[i], P.dim) : pre_op(P.actions[i], Q.dim);
    M.actions.push_back(restrict_map(op, maps, maps));
  }
  return M;
}

CheckReport verify_representability(const FiniteModuleData& P, const FiniteModuleData& Q, int s) {
  CheckReport rep;
  rep.subject = "A-Mod(Jet^" + std::to_string(s) + " " + P.name + ", " + Q.name + ") ≅ Diff_" + std::to_string(s);
  require_same_algebra(P, Q);
  JetModule J = jet_module(P, s);
  const std::size_t dq = Q.dim;
  Subspace hom = module_homs(J.module, Q);
  Subspace diff = diff_space(P, Q, s);
  rep.fact("dim_hom", std::to_string(hom.dim()));
  rep.fact("dim_diff", std::to_string(diff.dim()));

  QMatrix extend = extend_operator(P, Q);
  for (std::size_t b = 0; b < diff.dim(); ++b) {
    QMatrix F = unflatten(extend.apply(diff.basis().row(b)), dq, J.relations.ambient());
    if (!(F * columns_of(J.relations)).is_zero()) rep.fail("repr.well_defined", "extension does not vanish on μ");
  }
  rep.pass("repr.well_defined");

  QMatrix phi_full = pre_op(J.jet, dq);               // f ↦ f∘j
  QMatrix psi_full = pre_op(J.section, dq) * extend;  // Δ ↦ f^Δ
  QMatrix phi, psi;
  try {
    phi = restrict_map(phi_full, hom, diff);
    rep.pass("repr.into_diff");
  } catch (const DimensionError&) {
    throw;
  } catch (const std::logic_error&) {
    rep.fail("repr.into_diff", "f∘j is not a differential operator of the required order");
  }
  try {
    psi = restrict_map(psi_full, diff, hom);
    rep.pass("repr.into_hom");
  } catch (const DimensionError&) {
    throw;
  } catch (const std::logic_error&) {
    rep.fail("repr.into_hom", "extension is not A-linear");
  }
  if (!rep.passed()) return rep;
  if (!(phi * psi == QMatrix::identity(diff.dim())) || !(psi * phi == QMatrix::identity(hom.dim())))
    rep.fail("repr.inverse", "the two maps are not mutually inverse");
  rep.pass("repr.inverse");
  FiniteModuleData hm = map_module(J.module, Q, hom, MapSide::left, "hom");
  FiniteModuleData dm = map_module(P, Q, diff, MapSide::left, "diff");
  for (std::size_t i = 0; i < P.algebra->dim(); ++i)
    if (!(phi * hm.actions[i] == dm.actions[i] * phi))
      rep.fail("repr.linear", "f ↦ f∘j is not A-linear", {P.algebra->labels[i]});
  rep.pass("repr.linear");
  return rep;
}

CheckReport verify_counit_representability(const FiniteModuleData& P, const FiniteModuleData& Q, int s) {
  CheckReport rep;
  rep.subject = "A-Mod(" + Q.name + ", Diff⁺_" + std::to_string(s) + "(" + P.name + ")) ≅ Diff⁺_" + std::to_string(s);
  require_same_algebra(P, Q);
  const FiniteAlgebra& A = *P.algebra;
  FiniteModuleData reg = regular_module(P.algebra);
  Subspace plus = diff_space(reg, P, s);
  FiniteModuleData Dplus = map_module(reg, P, plus, MapSide::right, "Diff⁺");
  Subspace hom = module_homs(Q, Dplus);
  Subspace diff = diff_space(Q, P, s);
  rep.fact("dim_hom", std::to_string(hom.dim()));
  rep.fact("dim_diff", std::to_string(diff.dim()));

  QMatrix ev(P.dim, plus.dim());
  for (std::size_t k = 0; k < plus.dim(); ++k) {
    auto col = unflatten(plus.basis().row(k), P.dim, A.dim()).apply(A.unit);
    for (std::size_t r = 0; r < P.dim; ++r) ev(r, k) = col[r];
  }
  QMatrix phi, psi(hom.dim(), diff.dim());
  try {
    phi = restrict_map(post_op(ev, Q.dim), hom, diff);
    rep.pass("counit.into_diff");
  } catch (const DimensionError&) {
    throw;
  } catch (const std::logic_error&) {
    rep.fail("counit.into_diff", "ev∘g is not a differential operator of the required order");
    return rep;
  }
  for (std::size_t k = 0; k < diff.dim(); ++k) {
    QMatrix delta = unflatten(diff.basis().row(k), P.dim, Q.dim);
    QMatrix g(plus.dim(), Q.dim);
    bool inside = true;
    for (std::size_t q = 0; q < Q.dim; ++q) {
      // b ↦ Δ(b·q)
      QMatrix orbit(Q.dim, A.dim());
      for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t r = 0; r < Q.dim; ++r) orbit(r, i) = Q.actions[i](r, q);
      auto v = flatten(delta * orbit);
      if (!plus.contains(v)) {
        inside = false;
        break;
      }
      auto c = plus.coordinates(v);
      for (std::size_t t = 0; t < c.size(); ++t) g(t, q) = c[t];
    }
    auto gv = flatten(g);
    if (!inside || !hom.contains(gv)) {
      rep.fail("counit.into_hom", "the lift of Δ is not an A-linear map into Diff⁺");
      return rep;
    }
    auto c = hom.coordinates(gv);
    for (std::size_t t = 0; t < c.size(); ++t) psi(t, k) = c[t];
  }
  rep.pass("counit.into_hom");
  if (!(phi * psi == QMatrix::identity(diff.dim())) || !(psi * phi == QMatrix::identity(hom.dim())))
    rep.fail("counit.inverse", "the two maps are not mutually inverse");
  rep.pass("counit.inverse");
  return rep;
}

CheckReport verify_vinogradov_duality(const FiniteModuleData& P, int s) {
  CheckReport rep;
  rep.subject = "Vinogradov duality for " + P.name + " at s=" + std::to_string(s);
  FiniteModuleData reg = regular_module(P.algebra);
  const FiniteAlgebra& A = *P.algebra;
  const std::size_t m = A.dim();

  CheckReport first = verify_representability(P, reg, s);
  rep.merge(first, "diff.");

  JetModule J = jet_module(P, s);
  Subspace diff = diff_space(P, reg, s);
  FiniteModuleData dm = map_module(P, reg, diff, MapSide::left, "Diff_s(P,A)");
  Subspace hom_diff = module_homs(dm, reg);
  Subspace hom_jet = module_homs(J.module, reg);
  rep.fact("dim_diff", std::to_string(diff.dim()));
  rep.fact("dim_jet", std::to_string(J.module.dim));
  rep.fact("dim_hom_jet", std::to_string(hom_jet.dim()));
  rep.fact("dim_hom_diff", std::to_string(hom_diff.dim()));

  // x ↦ (Δ ↦ f^Δ(x)).
  QMatrix extend = extend_operator(P, reg);
  const std::size_t wide = J.relations.ambient();
  QMatrix E(m * diff.dim(), J.module.dim);
  for (std::size_t k = 0; k < diff.dim(); ++k) {
    QMatrix F = unflatten(extend.apply(diff.basis().row(k)), m, wide) * J.section;
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t t = 0; t < J.module.dim; ++t) E(r * diff.dim() + k, t) = F(r, t);
  }
  QMatrix e;
  try {
    e = restrict_map(E, Subspace::full(J.module.dim), hom_diff);
    rep.pass("jet.into_hom");
  } catch (const DimensionError&) {
    throw;
  } catch (const std::logic_error&) {
    rep.fail("jet.into_hom", "evaluation is not A-linear in Δ");
    return rep;
  }
  auto inv = inverse(e);
  if (!inv || !(e * *inv == QMatrix::identity(e.rows())))
    rep.fail("jet.inverse", "evaluation has no two-sided inverse", {std::to_string(e.rows()) + "x" + std::to_string(e.cols())});
  rep.pass("jet.inverse");
  FiniteModuleData hm = map_module(dm, reg, hom_diff, MapSide::left, "hom");
  for (std::size_t i = 0; i < m; ++i)
    if (!(e * J.module.actions[i] == hm.actions[i] * e)) rep.fail("jet.linear", "evaluation is not A-linear", {A.labels[i]});
  rep.pass("jet.linear");
  return rep;
}

}  // namespace ocat

#include "ocat/linalg.hpp"

#include <algorithm>
#include <cctype>

namespace ocat {

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw std::invalid_argument("empty rational");
  auto valid_int = [](const std::string& s) {
    std::size_t i = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto slash = t.find('/');
  std::string num = slash == std::string::npos ? t : t.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.find_first_of("+-") != std::string::npos)
    throw std::invalid_argument("malformed rational '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<Rational> QMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<Rational> QMatrix::column(std::size_t c) const {
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void QMatrix::append_row(const std::vector<Rational>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw DimensionError("append_row: length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

void QMatrix::append_rows(const QMatrix& other) {
  if (other.rows_ == 0) return;
  if (rows_ == 0 && cols_ == 0) cols_ = other.cols_;
  if (other.cols_ != cols_) throw DimensionError("append_rows: width mismatch");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
  QMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b(k, j) != 0) out(i, j) += x * b(k, j);
    }
  return out;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum: shape mismatch");
  QMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference: shape mismatch");
  QMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

QMatrix operator*(const Rational& s, const QMatrix& a) {
  QMatrix out = a;
  for (auto& x : out.data_) x *= s;
  return out;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw DimensionError("apply: vector length mismatch");
  std::vector<Rational> out(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (v[c] != 0 && (*this)(r, c) != 0) out[r] += (*this)(r, c) * v[c];
  return out;
}

RrefResult rref_with_pivots(const QMatrix& m) {
  QMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < a.cols() && lead_row < a.rows(); ++col) {
    std::size_t pick = lead_row;
    while (pick < a.rows() && a(pick, col) == 0) ++pick;
    if (pick == a.rows()) continue;
    if (pick != lead_row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pick, c), a(lead_row, c));
    Rational inv = 1 / a(lead_row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(lead_row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == lead_row || a(r, col) == 0) continue;
      Rational factor = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c)
        if (a(lead_row, c) != 0) a(r, c) -= factor * a(lead_row, c);
    }
    pivots.push_back(col);
    ++lead_row;
  }
  QMatrix out(lead_row, a.cols());
  for (std::size_t r = 0; r < lead_row; ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  return {out, pivots};
}

QMatrix rref(const QMatrix& m) { return rref_with_pivots(m).matrix; }

std::size_t rank(const QMatrix& m) { return rref_with_pivots(m).pivots.size(); }

Subspace::Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

Subspace Subspace::span(const QMatrix& rows) {
  Subspace s(rows.cols());
  auto r = rref_with_pivots(rows);
  s.basis_ = r.matrix;
  s.pivots_ = r.pivots;
  return s;
}

Subspace Subspace::full(std::size_t ambient) { return span(QMatrix::identity(ambient)); }

std::vector<Rational> Subspace::reduce(const std::vector<Rational>& v) const {
  if (v.size() != ambient_) throw DimensionError("subspace: vector length mismatch");
  std::vector<Rational> w = v;
  for (std::size_t r = 0; r < basis_.rows(); ++r) {
    Rational f = w[pivots_[r]];
    if (f == 0) continue;
    for (std::size_t c = 0; c < ambient_; ++c)
      if (basis_(r, c) != 0) w[c] -= f * basis_(r, c);
  }
  return w;
}

bool Subspace::contains(const std::vector<Rational>& v) const {
  auto w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](const Rational& q) { return q == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionError("subspace containment: ambient mismatch");
  for (std::size_t r = 0; r < other.dim(); ++r)
    if (!contains(other.basis_.row(r))) return false;
  return true;
}

std::vector<Rational> Subspace::coordinates(const std::vector<Rational>& v) const {
  if (v.size() != ambient_) throw DimensionError("subspace: vector length mismatch");
  std::vector<Rational> out(dim());
  for (std::size_t r = 0; r < dim(); ++r) out[r] = v[pivots_[r]];
  return out;
}

Subspace Subspace::annihilator() const { return kernel(basis_); }

bool operator==(const Subspace& a, const Subspace& b) {
  return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
}

Subspace kernel(const QMatrix& m) {
  auto r = rref_with_pivots(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  QMatrix basis(0, m.cols());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t row = 0; row < r.pivots.size(); ++row) v[r.pivots[row]] = -r.matrix(row, free);
    basis.append_row(v);
  }
  return Subspace::span(basis);
}

Subspace image(const QMatrix& m) { return Subspace::span(m.transpose()); }

Subspace sum(const Subspace& s, const Subspace& t) {
  if (s.ambient() != t.ambient()) throw DimensionError("sum: ambient mismatch");
  QMatrix all = s.basis();
  all.append_rows(t.basis());
  if (all.cols() != s.ambient()) all = QMatrix(0, s.ambient());
  return Subspace::span(all);
}

Subspace intersect(const Subspace& s, const Subspace& t) {
  if (s.ambient() != t.ambient()) throw DimensionError("intersect: ambient mismatch");
  // S ∩ T = annihilator(ann S + ann T).
  return sum(s.annihilator(), t.annihilator()).annihilator();
}

std::size_t quotient_dim(const Subspace& sub, const Subspace& super) {
  if (!super.contains(sub)) throw DimensionError("quotient_dim: not a subspace");
  return super.dim() - sub.dim();
}

std::optional<std::vector<Rational>> solve(const QMatrix& m, const std::vector<Rational>& b) {
  if (b.size() != m.rows()) throw DimensionError("solve: right-hand side length mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  auto red = rref_with_pivots(aug);
  std::vector<Rational> x(m.cols(), Rational(0));
  for (std::size_t row = 0; row < red.pivots.size(); ++row) {
    if (red.pivots[row] == m.cols()) return std::nullopt;
    x[red.pivots[row]] = red.matrix(row, m.cols());
  }
  return x;
}

QMatrix restrict_map(const QMatrix& m, const Subspace& domain, const Subspace& codomain) {
  if (m.cols() != domain.ambient() || m.rows() != codomain.ambient())
    throw DimensionError("restrict_map: shape mismatch");
  QMatrix out(codomain.dim(), domain.dim());
  for (std::size_t j = 0; j < domain.dim(); ++j) {
    auto img = m.apply(domain.basis().row(j));
    if (!codomain.contains(img)) throw std::logic_error("restrict_map: image leaves the target subspace");
    auto coords = codomain.coordinates(img);
    for (std::size_t i = 0; i < coords.size(); ++i) out(i, j) = coords[i];
  }
  return out;
}

}  // namespace ocat

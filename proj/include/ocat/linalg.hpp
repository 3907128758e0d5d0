#pragma once
// Exact linear algebra over the rationals.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocat {

using Rational = mpq_class;

// Parses "3", "-2/5", "0". Throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> row(std::size_t r) const;
  std::vector<Rational> column(std::size_t c) const;
  void append_row(const std::vector<Rational>& row);
  void append_rows(const QMatrix& other);

  QMatrix transpose() const;
  bool is_zero() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const Rational& s, const QMatrix& a);
  friend bool operator==(const QMatrix& a, const QMatrix& b);

  std::vector<Rational> apply(const std::vector<Rational>& v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RrefResult {
  QMatrix matrix;                 // reduced, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column per row
};

RrefResult rref_with_pivots(const QMatrix& m);
QMatrix rref(const QMatrix& m);
std::size_t rank(const QMatrix& m);

// Row space of a matrix, kept as a canonical RREF basis so that equality of
// subspaces is equality of basis matrices.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0);
  static Subspace span(const QMatrix& rows);  // rows are the spanning vectors
  static Subspace full(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const QMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const std::vector<Rational>& v) const;
  bool contains(const Subspace& other) const;
  // Coordinates of v in the RREF basis; only meaningful when contains(v).
  std::vector<Rational> coordinates(const std::vector<Rational>& v) const;
  // Reduces v modulo the subspace (zeroes the pivot entries).
  std::vector<Rational> reduce(const std::vector<Rational>& v) const;
  // Vectors whose inner product with every basis vector vanishes.
  Subspace annihilator() const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  std::size_t ambient_;
  QMatrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace kernel(const QMatrix& m);
Subspace image(const QMatrix& m);  // column space
Subspace intersect(const Subspace& s, const Subspace& t);
Subspace sum(const Subspace& s, const Subspace& t);
std::size_t quotient_dim(const Subspace& sub, const Subspace& super);
std::optional<std::vector<Rational>> solve(const QMatrix& m, const std::vector<Rational>& b);

// Matrix whose columns are expressed in basis coordinates: given linear map M
// (ambient_out x ambient_in) and subspaces S <= in, T <= out with M(S) <= T,
// returns the dim T x dim S matrix. Throws if M(S) is not inside T.
QMatrix restrict_map(const QMatrix& m, const Subspace& domain, const Subspace& codomain);

}  // namespace ocat

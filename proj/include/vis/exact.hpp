#pragma once

#include "vis/errors.hpp"
#include "vis/scalar.hpp"

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace vis {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;
using ExactMatrix = Matrix<GaussianRational>;

// ---------------------------------------------------------------------------
// Field linear algebra, templated on the scalar (Rational or GaussianRational).

// Reduced row echelon form in place; returns pivot columns.
template <typename Scalar>
std::vector<int> rref_inplace(Matrix<Scalar>& m) {
  std::vector<int> pivots;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!is_zero(m(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j)
      if (!is_zero(m(r, j))) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const Scalar f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j)
        if (!is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

template <typename Scalar>
int rank(Matrix<Scalar> m) {
  return static_cast<int>(rref_inplace(m).size());
}

// Basis of {x : A x = 0}, as columns.
template <typename Scalar>
Matrix<Scalar> kernel(Matrix<Scalar> a) {
  const auto pivots = rref_inplace(a);
  const Eigen::Index n = a.cols();
  std::vector<char> is_pivot(n, 0);
  for (int p : pivots) is_pivot[p] = 1;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<Scalar> k = Matrix<Scalar>::Zero(n, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (!is_zero(a(r, free[f]))) k(pivots[r], f) = -a(r, free[f]);
  }
  return k;
}

template <typename Scalar>
std::optional<Matrix<Scalar>> inverse(const Matrix<Scalar>& a) {
  const Eigen::Index n = a.rows();
  Matrix<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Matrix<Scalar>::Identity(n, n);
  const auto pivots = rref_inplace(aug);
  if (static_cast<Eigen::Index>(pivots.size()) < n || pivots.back() >= n) return std::nullopt;
  return Matrix<Scalar>(aug.rightCols(n));
}

// Product that skips zero entries of the left factor.
template <typename Scalar>
Matrix<Scalar> multiply(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> c = Matrix<Scalar>::Zero(a.rows(), b.cols());
  std::vector<Eigen::Index> nz;
  for (Eigen::Index k = 0; k < b.rows(); ++k) {
    nz.clear();
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      if (!is_zero(b(k, j))) nz.push_back(j);
    if (nz.empty()) continue;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (is_zero(a(i, k))) continue;
      const Scalar& f = a(i, k);
      for (auto j : nz) c(i, j) += f * b(k, j);
    }
  }
  return c;
}

template <typename Scalar>
Vector<Scalar> multiply(const Matrix<Scalar>& a, const Vector<Scalar>& v) {
  Vector<Scalar> out = Vector<Scalar>::Zero(a.rows());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (is_zero(v(k))) continue;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (!is_zero(a(i, k))) out(i) += a(i, k) * v(k);
  }
  return out;
}

template <typename Scalar>
bool is_zero_matrix(const Matrix<Scalar>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j))) return false;
  return true;
}

template <typename Scalar>
Scalar trace(const Matrix<Scalar>& a) {
  Scalar t(0);
  for (Eigen::Index i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

// Coefficients c_0..c_n of det(t I - A), via Faddeev-LeVerrier.
template <typename Scalar>
std::vector<Scalar> characteristic_polynomial(const Matrix<Scalar>& a) {
  const Eigen::Index n = a.rows();
  std::vector<Scalar> c(n + 1, Scalar(0));
  c[n] = Scalar(1);
  Matrix<Scalar> m = Matrix<Scalar>::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = multiply(a, m);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    const Scalar t = trace(Matrix<Scalar>(multiply(a, m)));
    c[n - k] = -t / Scalar(static_cast<int>(k));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Gaussian-rational matrices.

ExactMatrix conjugate(const ExactMatrix& m);
ExactMatrix transpose(const ExactMatrix& m);
ExactMatrix adjoint(const ExactMatrix& m);
ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix identity(int n);
ExactMatrix scaled(const ExactMatrix& m, const GaussianRational& s);
ExactMatrix from_rational(const QMatrix& m);
ExactMatrix diagonal(const std::vector<int>& entries);
ExactMatrix block_diagonal(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix elementary(int n, int i, int j, const GaussianRational& value = GaussianRational(1));

// Real coordinate vector of length 2*rows*cols: real parts, then imaginary parts.
QVector flatten(const ExactMatrix& m);
ExactMatrix unflatten(const QVector& v, int rows, int cols);

// ---------------------------------------------------------------------------
// Subspaces of Q^n kept in canonical reduced echelon form.

class RealSpan {
public:
  RealSpan() = default;
  explicit RealSpan(int ambient_dim);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(pivots_.size()); }
  const QMatrix& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }
  QVector vector(int k) const { return basis_.row(k).transpose(); }

  bool contains(const QVector& v) const;
  // Coordinates with respect to the echelon basis; nullopt when v is not in the span.
  std::optional<QVector> coordinates(const QVector& v) const;
  bool contains(const RealSpan& other) const;

  friend bool operator==(const RealSpan& a, const RealSpan& b);
  friend bool operator!=(const RealSpan& a, const RealSpan& b) { return !(a == b); }

  // Rows of m need not be independent.
  static RealSpan from_rows(QMatrix m);

private:
  int ambient_ = 0;
  QMatrix basis_;
  std::vector<int> pivots_;
  std::vector<std::vector<std::pair<int, Rational>>> sparse_rows_;

  void index_rows();
};

RealSpan span_of(const std::vector<QVector>& vectors, int ambient_dim);
RealSpan span_of_columns(const QMatrix& columns);
RealSpan intersect(const RealSpan& a, const RealSpan& b);
RealSpan sum(const RealSpan& a, const RealSpan& b);
bool membership(const QVector& v, const RealSpan& s);

// Incremental row reduction used for large stacked linear systems.
class EchelonBuilder {
public:
  explicit EchelonBuilder(int ambient_dim) : ambient_(ambient_dim) {}
  // Returns true when v was independent of the rows added so far.
  bool add(QVector v);
  int rank() const { return static_cast<int>(rows_.size()); }
  int ambient_dim() const { return ambient_; }
  bool full() const { return rank() == ambient_; }
  // Null space of the accumulated rows, as columns.
  QMatrix null_space() const;
  RealSpan span() const;

private:
  int ambient_;
  std::vector<QVector> rows_;
  std::vector<int> lead_;
};

// Exact inertia (positive, negative, zero) of a symmetric rational matrix.
struct Inertia {
  int positive = 0, negative = 0, zero = 0;
  friend bool operator==(const Inertia& a, const Inertia& b) {
    return a.positive == b.positive && a.negative == b.negative && a.zero == b.zero;
  }
};
Inertia inertia(QMatrix m);

// ---------------------------------------------------------------------------
// Polynomials over Q, coefficients low to high.

using QPoly = std::vector<Rational>;

void trim(QPoly& p);
int degree(const QPoly& p);
Rational evaluate(const QPoly& p, const Rational& x);
std::pair<QPoly, QPoly> divide(const QPoly& a, const QPoly& b);
QPoly poly_gcd(QPoly a, QPoly b);
QPoly derivative(const QPoly& p);
QPoly square_free_part(const QPoly& p);
QPoly monic(QPoly p);
// Distinct rational roots, ascending.
std::vector<Rational> rational_roots(const QPoly& p);
QPoly minimal_polynomial(const QMatrix& l);

struct Eigenspace {
  Rational value;
  RealSpan space;
};

// Complete eigenspace decomposition, eigenvalues ascending.
std::vector<Eigenspace> rational_eigenspaces(const QMatrix& l);

} // namespace vis

#include "vis/exact.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace vis {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const GaussianRational& z) {
  if (z.is_real()) return to_string(z.re);
  if (sgn(z.re) == 0) return to_string(z.im) + "i";
  std::string s = to_string(z.re);
  s += sgn(z.im) > 0 ? "+" : "-";
  s += to_string(Rational(abs(z.im))) + "i";
  return s;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

ExactMatrix conjugate(const ExactMatrix& m) {
  ExactMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).conj();
  return out;
}

ExactMatrix transpose(const ExactMatrix& m) { return m.transpose(); }

ExactMatrix adjoint(const ExactMatrix& m) { return conjugate(transpose(m)); }

ExactMatrix commutator(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix ab = multiply(a, b);
  ExactMatrix ba = multiply(b, a);
  for (Eigen::Index i = 0; i < ab.rows(); ++i)
    for (Eigen::Index j = 0; j < ab.cols(); ++j)
      if (!ba(i, j).is_zero()) ab(i, j) -= ba(i, j);
  return ab;
}

ExactMatrix identity(int n) { return ExactMatrix::Identity(n, n); }

ExactMatrix scaled(const ExactMatrix& m, const GaussianRational& s) {
  ExactMatrix out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) out(i, j) *= s;
  return out;
}

ExactMatrix from_rational(const QMatrix& m) {
  ExactMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = GaussianRational(m(i, j));
  return out;
}

ExactMatrix diagonal(const std::vector<int>& entries) {
  const int n = static_cast<int>(entries.size());
  ExactMatrix out = ExactMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = entries[i];
  return out;
}

ExactMatrix block_diagonal(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix out = ExactMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

ExactMatrix elementary(int n, int i, int j, const GaussianRational& value) {
  ExactMatrix out = ExactMatrix::Zero(n, n);
  out(i, j) = value;
  return out;
}

QVector flatten(const ExactMatrix& m) {
  const Eigen::Index n = m.rows() * m.cols();
  QVector v(2 * n);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      v(i * m.cols() + j) = m(i, j).re;
      v(n + i * m.cols() + j) = m(i, j).im;
    }
  return v;
}

ExactMatrix unflatten(const QVector& v, int rows, int cols) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows) * cols;
  if (v.size() != 2 * n) throw std::invalid_argument("unflatten: length mismatch");
  ExactMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = GaussianRational(v(i * cols + j), v(n + i * cols + j));
  return m;
}

// ---------------------------------------------------------------------------

RealSpan::RealSpan(int ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

RealSpan RealSpan::from_rows(QMatrix m) {
  RealSpan s;
  s.ambient_ = static_cast<int>(m.cols());
  auto pivots = rref_inplace(m);
  s.basis_ = m.topRows(pivots.size());
  s.pivots_ = std::move(pivots);
  s.index_rows();
  return s;
}

void RealSpan::index_rows() {
  sparse_rows_.assign(dim(), {});
  for (int k = 0; k < dim(); ++k)
    for (int c = 0; c < ambient_; ++c)
      if (sgn(basis_(k, c)) != 0) sparse_rows_[k].emplace_back(c, basis_(k, c));
}

std::optional<QVector> RealSpan::coordinates(const QVector& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("RealSpan: length mismatch");
  QVector residual = v;
  QVector coords(dim());
  for (int k = 0; k < dim(); ++k) {
    coords(k) = v(pivots_[k]);
    if (sgn(coords(k)) == 0) continue;
    for (const auto& [c, val] : sparse_rows_[k]) residual(c) -= coords(k) * val;
  }
  for (int c = 0; c < ambient_; ++c)
    if (sgn(residual(c)) != 0) return std::nullopt;
  return coords;
}

bool RealSpan::contains(const QVector& v) const { return coordinates(v).has_value(); }

bool RealSpan::contains(const RealSpan& other) const {
  for (int k = 0; k < other.dim(); ++k)
    if (!contains(other.vector(k))) return false;
  return true;
}

bool operator==(const RealSpan& a, const RealSpan& b) {
  return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.basis_ == b.basis_;
}

RealSpan span_of(const std::vector<QVector>& vectors, int ambient_dim) {
  QMatrix m(vectors.size(), ambient_dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient_dim) throw std::invalid_argument("span_of: length mismatch");
    m.row(i) = vectors[i].transpose();
  }
  return RealSpan::from_rows(std::move(m));
}

RealSpan span_of_columns(const QMatrix& columns) { return RealSpan::from_rows(columns.transpose()); }

RealSpan sum(const RealSpan& a, const RealSpan& b) {
  QMatrix m(a.dim() + b.dim(), a.ambient_dim());
  if (a.dim()) m.topRows(a.dim()) = a.basis();
  if (b.dim()) m.bottomRows(b.dim()) = b.basis();
  return RealSpan::from_rows(std::move(m));
}

// Kernel route: x in A cap B iff x = u^T A = w^T B; solve [A; -B]^T (u, w) = 0.
RealSpan intersect(const RealSpan& a, const RealSpan& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("intersect: ambient mismatch");
  const int n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return RealSpan(n);
  QMatrix stacked(n, a.dim() + b.dim());
  stacked.leftCols(a.dim()) = a.basis().transpose();
  stacked.rightCols(b.dim()) = -b.basis().transpose();
  const QMatrix k = kernel(stacked);
  if (k.cols() == 0) return RealSpan(n);
  QMatrix rows = (a.basis().transpose() * k.topRows(a.dim())).transpose();
  return RealSpan::from_rows(std::move(rows));
}

bool membership(const QVector& v, const RealSpan& s) { return s.contains(v); }

// ---------------------------------------------------------------------------

bool EchelonBuilder::add(QVector v) {
  if (v.size() != ambient_) throw std::invalid_argument("EchelonBuilder: length mismatch");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const int c = lead_[k];
    if (sgn(v(c)) == 0) continue;
    const Rational f = v(c);
    for (int j = c; j < ambient_; ++j)
      if (sgn(rows_[k](j)) != 0) v(j) -= f * rows_[k](j);
  }
  int lead = -1;
  for (int j = 0; j < ambient_; ++j)
    if (sgn(v(j)) != 0) {
      lead = j;
      break;
    }
  if (lead < 0) return false;
  const Rational inv = 1 / v(lead);
  for (int j = lead; j < ambient_; ++j)
    if (sgn(v(j)) != 0) v(j) *= inv;
  // keep earlier rows free of the new lead so later reductions stay one pass
  for (auto& row : rows_) {
    if (sgn(row(lead)) == 0) continue;
    const Rational f = row(lead);
    for (int j = lead; j < ambient_; ++j)
      if (sgn(v(j)) != 0) row(j) -= f * v(j);
  }
  rows_.push_back(std::move(v));
  lead_.push_back(lead);
  return true;
}

QMatrix EchelonBuilder::null_space() const {
  QMatrix m(rows_.size(), ambient_);
  for (std::size_t k = 0; k < rows_.size(); ++k) m.row(k) = rows_[k].transpose();
  return kernel(m);
}

RealSpan EchelonBuilder::span() const {
  QMatrix m(rows_.size(), ambient_);
  for (std::size_t k = 0; k < rows_.size(); ++k) m.row(k) = rows_[k].transpose();
  return RealSpan::from_rows(std::move(m));
}

// Symmetric Gaussian elimination by congruence.
Inertia inertia(QMatrix m) {
  Inertia out;
  const Eigen::Index n = m.rows();
  std::vector<char> done(n, 0);
  for (Eigen::Index step = 0; step < n; ++step) {
    Eigen::Index p = -1;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!done[i] && sgn(m(i, i)) != 0) {
        p = i;
        break;
      }
    if (p < 0) {
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = 0; i < n && pi < 0; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
          if (!done[i] && !done[j] && sgn(m(i, j)) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) break;
      // row_i += row_j and col_i += col_j makes m(i,i) = 2 m(i,j) != 0
      m.row(pi) += m.row(pj);
      m.col(pi) += m.col(pj);
      p = pi;
    }
    const Rational d = m(p, p);
    (sgn(d) > 0 ? out.positive : out.negative) += 1;
    done[p] = 1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (done[i] || sgn(m(i, p)) == 0) continue;
      const Rational f = m(i, p) / d;
      for (Eigen::Index j = 0; j < n; ++j)
        if (sgn(m(p, j)) != 0) m(i, j) -= f * m(p, j);
      for (Eigen::Index j = 0; j < n; ++j)
        if (sgn(m(j, p)) != 0) m(j, i) -= f * m(j, p);
    }
  }
  out.zero = static_cast<int>(n) - out.positive - out.negative;
  return out;
}

// ---------------------------------------------------------------------------

void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const QPoly& p) {
  QPoly q = p;
  trim(q);
  return static_cast<int>(q.size()) - 1;
}

Rational evaluate(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::pair<QPoly, QPoly> divide(const QPoly& a, const QPoly& b) {
  QPoly r = a, d = b;
  trim(r);
  trim(d);
  if (d.empty()) throw std::domain_error("polynomial division by zero");
  if (r.size() < d.size()) return {QPoly{}, r};
  QPoly q(r.size() - d.size() + 1, Rational(0));
  while (r.size() >= d.size() && !r.empty()) {
    const std::size_t shift = r.size() - d.size();
    const Rational f = r.back() / d.back();
    q[shift] = f;
    for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= f * d[i];
    trim(r);
  }
  trim(q);
  return {q, r};
}

QPoly monic(QPoly p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

QPoly poly_gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

QPoly square_free_part(const QPoly& p) {
  QPoly q = p;
  trim(q);
  if (q.size() <= 1) return monic(q);
  return monic(divide(q, poly_gcd(q, derivative(q))).first);
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<std::pair<mpz_class, int>> factors;
  mpz_class m = n;
  for (mpz_class d = 2; d * d <= m; ++d) {
    int e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    if (e) factors.emplace_back(d, e);
  }
  if (m > 1) factors.emplace_back(m, 1);
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t count = divs.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

} // namespace

std::vector<Rational> rational_roots(const QPoly& p) {
  QPoly q = square_free_part(p);
  std::vector<Rational> roots;
  if (q.size() <= 1) return roots;
  if (sgn(q[0]) == 0) {
    roots.push_back(0);
    q = divide(q, QPoly{Rational(0), Rational(1)}).first;
  }
  mpz_class den = 1;
  for (const auto& c : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : q) ints.push_back(mpz_class(c * den));
  if (ints.size() > 1) {
    const auto num_divs = positive_divisors(ints.front());
    const auto den_divs = positive_divisors(ints.back());
    for (const auto& a : num_divs)
      for (const auto& b : den_divs)
        for (int s : {1, -1}) {
          Rational r(mpz_class(s * a), b);
          r.canonicalize();
          if (sgn(evaluate(q, r)) == 0 &&
              std::find(roots.begin(), roots.end(), r) == roots.end())
            roots.push_back(r);
        }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

namespace {

QPoly poly_lcm(const QPoly& a, const QPoly& b) {
  if (a.empty()) return b;
  QPoly prod(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  return monic(divide(prod, poly_gcd(a, b)).first);
}

QVector apply_poly(const QPoly& p, const QMatrix& l, const QVector& v) {
  QVector acc = QVector::Zero(v.size());
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = multiply(l, acc);
    if (sgn(*it) != 0) acc += *it * v;
  }
  return acc;
}

// Monic minimal polynomial of l relative to v (smallest Krylov dependency).
QPoly local_minimal_polynomial(const QMatrix& l, const QVector& v) {
  std::vector<QVector> krylov{v};
  while (true) {
    QVector next = multiply(l, krylov.back());
    QMatrix system(v.size(), krylov.size() + 1);
    for (std::size_t k = 0; k < krylov.size(); ++k) system.col(k) = krylov[k];
    system.col(krylov.size()) = next;
    const QMatrix k = kernel(system);
    if (k.cols() > 0) {
      // unique up to scale since the earlier vectors are independent
      QPoly p(krylov.size() + 1);
      for (std::size_t i = 0; i <= krylov.size(); ++i) p[i] = k(i, 0);
      return monic(p);
    }
    krylov.push_back(std::move(next));
  }
}

} // namespace

QPoly minimal_polynomial(const QMatrix& l) {
  const Eigen::Index n = l.rows();
  QPoly p;
  for (Eigen::Index j = 0; j < n; ++j) {
    QVector e = QVector::Zero(n);
    e(j) = 1;
    if (!p.empty()) {
      const QVector r = apply_poly(p, l, e);
      bool zero = true;
      for (Eigen::Index i = 0; i < n; ++i)
        if (sgn(r(i)) != 0) {
          zero = false;
          break;
        }
      if (zero) continue;
    }
    p = poly_lcm(p, local_minimal_polynomial(l, e));
  }
  if (p.empty()) p = {Rational(1)};
  return p;
}

std::vector<Eigenspace> rational_eigenspaces(const QMatrix& l) {
  if (l.rows() != l.cols()) throw std::invalid_argument("rational_eigenspaces: matrix not square");
  const int n = static_cast<int>(l.rows());
  std::vector<Eigenspace> out;
  if (n == 0) return out;
  const QPoly minpoly = minimal_polynomial(l);
  const auto roots = rational_roots(minpoly);
  QPoly rest = square_free_part(minpoly);
  for (const auto& r : roots) rest = divide(rest, QPoly{Rational(-r), Rational(1)}).first;
  if (degree(rest) > 0)
    throw NonRationalSpectrum("minimal polynomial has an irreducible factor of degree " +
                              std::to_string(degree(rest)));
  int total = 0;
  for (const auto& r : roots) {
    QMatrix shifted = l;
    for (int i = 0; i < n; ++i) shifted(i, i) -= r;
    RealSpan space = span_of_columns(kernel(shifted));
    total += space.dim();
    out.push_back({r, std::move(space)});
  }
  if (total != n)
    throw NotDiagonalizable("eigenspace dimensions sum to " + std::to_string(total) + " of " +
                            std::to_string(n));
  return out;
}

} // namespace vis

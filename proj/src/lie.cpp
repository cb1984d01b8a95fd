#include "vis/lie.hpp"

#include <sstream>

namespace vis {

namespace {

void axpy(QVector& out, const Rational& f, const SparseVector& v) {
  for (const auto& [k, c] : v) out(k) += f * c;
}

SparseVector sparse(const QVector& v) {
  SparseVector out;
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (sgn(v(k)) != 0) out.emplace_back(static_cast<int>(k), v(k));
  return out;
}

std::vector<int> support(const QVector& v) {
  std::vector<int> out;
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (sgn(v(k)) != 0) out.push_back(static_cast<int>(k));
  return out;
}

bool is_zero_vector(const QVector& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k)
    if (sgn(v(k)) != 0) return false;
  return true;
}

} // namespace

// ---------------------------------------------------------------------------

std::optional<QVector> RealFormAlgebra::try_coordinates(const ExactMatrix& x) const {
  if (x.rows() != m_ || x.cols() != m_) return std::nullopt;
  return span_.coordinates(flatten(x));
}

QVector RealFormAlgebra::coordinates(const ExactMatrix& x) const {
  auto c = try_coordinates(x);
  if (!c) throw NotStable("matrix is not an element of " + label_);
  return *c;
}

ExactMatrix RealFormAlgebra::element(const QVector& coords) const {
  ExactMatrix out = ExactMatrix::Zero(m_, m_);
  for (int k = 0; k < dim(); ++k) {
    if (sgn(coords(k)) == 0) continue;
    const GaussianRational f(coords(k));
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        if (!basis_[k](i, j).is_zero()) out(i, j) += f * basis_[k](i, j);
  }
  return out;
}

const SparseVector& RealFormAlgebra::structure(int i, int j) const {
  if (i == j) return zero_;
  if (i < j) return structure_[static_cast<std::size_t>(i) * dim() + j];
  throw std::logic_error("structure(i, j) requires i < j; use bracket for other orders");
}

QVector RealFormAlgebra::unit(int i) const {
  QVector e = QVector::Zero(dim());
  e(i) = 1;
  return e;
}

QVector RealFormAlgebra::bracket(const QVector& x, const QVector& y) const {
  QVector out = QVector::Zero(dim());
  const auto sx = support(x), sy = support(y);
  for (int i : sx)
    for (int j : sy) {
      if (i == j) continue;
      const Rational f = x(i) * y(j);
      if (i < j)
        axpy(out, f, structure_[static_cast<std::size_t>(i) * dim() + j]);
      else
        axpy(out, -f, structure_[static_cast<std::size_t>(j) * dim() + i]);
    }
  return out;
}

QMatrix RealFormAlgebra::ad(const QVector& x) const {
  QMatrix out = QMatrix::Zero(dim(), dim());
  for (int j = 0; j < dim(); ++j) {
    QVector col = bracket(x, unit(j));
    out.col(j) = col;
  }
  return out;
}

AlgebraPtr make_algebra(const std::vector<ExactMatrix>& generators, std::string label) {
  if (generators.empty()) throw std::invalid_argument("make_algebra: empty basis");
  auto g = std::make_shared<RealFormAlgebra>();
  g->m_ = static_cast<int>(generators.front().rows());
  g->label_ = std::move(label);
  std::vector<QVector> flat;
  for (const auto& x : generators) {
    if (x.rows() != g->m_ || x.cols() != g->m_)
      throw std::invalid_argument("make_algebra: basis matrices of different sizes");
    flat.push_back(flatten(x));
  }
  g->span_ = span_of(flat, 2 * g->m_ * g->m_);
  if (g->span_.dim() != static_cast<int>(generators.size()))
    throw std::invalid_argument("make_algebra: basis is not linearly independent");
  for (int k = 0; k < g->span_.dim(); ++k)
    g->basis_.push_back(unflatten(g->span_.vector(k), g->m_, g->m_));
  const int d = g->dim();
  g->structure_.assign(static_cast<std::size_t>(d) * d, {});
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      auto c = g->span_.coordinates(flatten(commutator(g->basis_[i], g->basis_[j])));
      if (!c)
        throw NotClosedUnderBracket("[b" + std::to_string(i) + ", b" + std::to_string(j) +
                                    "] leaves the span of " + g->label_);
      g->structure_[static_cast<std::size_t>(i) * d + j] = sparse(*c);
    }
  return g;
}

// ---------------------------------------------------------------------------

InvolutionRecipe InvolutionRecipe::make(const ExactMatrix& a, bool conj, bool neg_transpose,
                                        int sign) {
  auto inv = inverse(a);
  if (!inv) throw std::invalid_argument("InvolutionRecipe: conjugator is singular");
  if (sign != 1 && sign != -1) throw std::invalid_argument("InvolutionRecipe: sign must be +-1");
  return InvolutionRecipe{a, *inv, conj, neg_transpose, sign};
}

ExactMatrix InvolutionRecipe::apply(const ExactMatrix& x) const {
  ExactMatrix y = conj ? conjugate(x) : x;
  if (neg_transpose) y = scaled(transpose(y), GaussianRational(-1));
  y = multiply(multiply(conjugator, y), conjugator_inverse);
  return sign == 1 ? y : scaled(y, GaussianRational(-1));
}

namespace {

// (phi_G(m), phi_G(m)^-1) for the flags of a recipe.
std::pair<ExactMatrix, ExactMatrix> phi_group(bool conj, bool neg_transpose, const ExactMatrix& m,
                                              const ExactMatrix& m_inv) {
  ExactMatrix a = conj ? conjugate(m) : m;
  ExactMatrix b = conj ? conjugate(m_inv) : m_inv;
  if (neg_transpose) return {transpose(b), transpose(a)};
  return {a, b};
}

} // namespace

ExactMatrix InvolutionRecipe::apply_group(const ExactMatrix& g) const {
  if (sign != 1) throw std::logic_error("recipe with sign -1 has no group lift");
  auto g_inv = inverse(g);
  if (!g_inv) throw std::invalid_argument("apply_group: singular element");
  auto [pg, pg_inv] = phi_group(conj, neg_transpose, g, *g_inv);
  return multiply(multiply(conjugator, pg), conjugator_inverse);
}

std::string InvolutionRecipe::describe() const {
  std::ostringstream os;
  os << (sign < 0 ? "-" : "") << "Ad(A)";
  if (conj) os << " o conj";
  if (neg_transpose) os << " o (-transpose)";
  return os.str();
}

InvolutionRecipe compose(const InvolutionRecipe& r1, const InvolutionRecipe& r2) {
  auto [pa, pa_inv] = phi_group(r1.conj, r1.neg_transpose, r2.conjugator, r2.conjugator_inverse);
  InvolutionRecipe out;
  out.conjugator = multiply(r1.conjugator, pa);
  out.conjugator_inverse = multiply(pa_inv, r1.conjugator_inverse);
  out.conj = r1.conj != r2.conj;
  out.neg_transpose = r1.neg_transpose != r2.neg_transpose;
  out.sign = r1.sign * r2.sign;
  return out;
}

InvolutionRecipe conjugate_by(const InvolutionRecipe& r, const ExactMatrix& g) {
  const auto inner = InvolutionRecipe::make(g);
  const auto inner_inv = InvolutionRecipe{inner.conjugator_inverse, inner.conjugator, false, false, 1};
  return compose(compose(inner, r), inner_inv);
}

// ---------------------------------------------------------------------------

LinearAlgebraMap identity_map(const AlgebraPtr& g) {
  return LinearAlgebraMap{g, QMatrix::Identity(g->dim(), g->dim()),
                          InvolutionRecipe::identity(g->ambient_size()), "id"};
}

LinearAlgebraMap map_from_recipe(const AlgebraPtr& g, const InvolutionRecipe& r, std::string name) {
  QMatrix action(g->dim(), g->dim());
  for (int j = 0; j < g->dim(); ++j) {
    auto c = g->try_coordinates(r.apply(g->basis()[j]));
    if (!c) throw NotStable(name + " does not preserve " + g->label());
    action.col(j) = *c;
  }
  return LinearAlgebraMap{g, std::move(action), r, std::move(name)};
}

LinearAlgebraMap compose(const LinearAlgebraMap& a, const LinearAlgebraMap& b, std::string name) {
  if (a.algebra != b.algebra) throw std::invalid_argument("compose: maps on different algebras");
  std::optional<InvolutionRecipe> r;
  if (a.recipe && b.recipe) r = compose(*a.recipe, *b.recipe);
  if (name.empty()) name = a.name + b.name;
  return LinearAlgebraMap{a.algebra, multiply(a.action, b.action), r, std::move(name)};
}

bool commute(const LinearAlgebraMap& a, const LinearAlgebraMap& b) {
  return multiply(a.action, b.action) == multiply(b.action, a.action);
}

bool is_involution(const LinearAlgebraMap& m) {
  const QMatrix sq = multiply(m.action, m.action);
  return sq == QMatrix::Identity(sq.rows(), sq.cols());
}

bool is_automorphism(const LinearAlgebraMap& m, std::pair<int, int>* witness) {
  const auto& g = *m.algebra;
  const int d = g.dim();
  std::vector<QVector> cols(d);
  for (int j = 0; j < d; ++j) cols[j] = m.action.col(j);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      QVector lhs = QVector::Zero(d);
      for (const auto& [k, c] : g.structure(i, j)) lhs += c * cols[k];
      if (lhs != g.bracket(cols[i], cols[j])) {
        if (witness) *witness = {i, j};
        return false;
      }
    }
  return true;
}

void certify_involution(const LinearAlgebraMap& m) {
  if (!is_involution(m)) throw NotInvolution(m.name + " does not square to the identity");
  std::pair<int, int> w;
  if (!is_automorphism(m, &w))
    throw NotAutomorphism(m.name + " breaks the bracket on basis pair (" +
                          std::to_string(w.first) + ", " + std::to_string(w.second) + ")");
}

// ---------------------------------------------------------------------------

RealSpan whole(const RealFormAlgebra& g) {
  return RealSpan::from_rows(QMatrix::Identity(g.dim(), g.dim()));
}

RealSpan fixed_subspace(const RealFormAlgebra& g, const LinearAlgebraMap& iota, int sign) {
  if (iota.algebra.get() != &g) throw std::invalid_argument("fixed_subspace: map on another algebra");
  if (!is_involution(iota)) throw NotInvolution(iota.name + " does not square to the identity");
  QMatrix shifted = iota.action;
  for (int i = 0; i < g.dim(); ++i) shifted(i, i) -= sign;
  return span_of_columns(kernel(shifted));
}

RealSpan multi_fixed(const RealFormAlgebra& g,
                     const std::vector<std::pair<const LinearAlgebraMap*, int>>& constraints) {
  RealSpan out = whole(g);
  for (const auto& [iota, sign] : constraints) out = intersect(out, fixed_subspace(g, *iota, sign));
  return out;
}

RealSpan maximal_abelian(const RealFormAlgebra& g, const RealSpan& v, const std::vector<int>* order) {
  const int d = v.dim();
  RealSpan result(g.dim());
  if (d == 0) return result;
  std::vector<QVector> vb(d);
  for (int k = 0; k < d; ++k) vb[k] = v.vector(order ? (*order)[k] : k);
  std::vector<QVector> chosen{vb[0]};
  while (true) {
    result = span_of(chosen, g.dim());
    // centralizer of the chosen elements inside v
    QMatrix system(static_cast<Eigen::Index>(g.dim()) * chosen.size(), d);
    for (int i = 0; i < d; ++i)
      for (std::size_t l = 0; l < chosen.size(); ++l)
        system.block(l * g.dim(), i, g.dim(), 1) = g.bracket(chosen[l], vb[i]);
    const QMatrix k = kernel(system);
    bool extended = false;
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
      QVector cand = QVector::Zero(g.dim());
      for (int i = 0; i < d; ++i)
        if (sgn(k(i, c)) != 0) cand += k(i, c) * vb[i];
      if (!result.contains(cand)) {
        chosen.push_back(std::move(cand));
        extended = true;
        break;
      }
    }
    if (!extended) return result;
  }
}

RealSpan centralizer(const RealFormAlgebra& g, const RealSpan& s, const RealSpan& within) {
  const int d = within.dim();
  if (d == 0) return RealSpan(g.dim());
  QMatrix system(static_cast<Eigen::Index>(g.dim()) * std::max(1, s.dim()), d);
  system.setZero();
  for (int i = 0; i < d; ++i)
    for (int l = 0; l < s.dim(); ++l)
      system.block(static_cast<Eigen::Index>(l) * g.dim(), i, g.dim(), 1) =
          g.bracket(s.vector(l), within.vector(i));
  const QMatrix k = kernel(system);
  return RealSpan::from_rows((within.basis().transpose() * k).transpose());
}

bool is_abelian(const RealFormAlgebra& g, const RealSpan& s) {
  for (int i = 0; i < s.dim(); ++i)
    for (int j = i + 1; j < s.dim(); ++j)
      if (!is_zero_vector(g.bracket(s.vector(i), s.vector(j)))) return false;
  return true;
}

bool is_subalgebra(const RealFormAlgebra& g, const RealSpan& s) {
  for (int i = 0; i < s.dim(); ++i)
    for (int j = i + 1; j < s.dim(); ++j)
      if (!s.contains(g.bracket(s.vector(i), s.vector(j)))) return false;
  return true;
}

RealSpan bracket_span(const RealFormAlgebra& g, const RealSpan& a, const RealSpan& b) {
  EchelonBuilder builder(g.dim());
  for (int i = 0; i < a.dim() && !builder.full(); ++i)
    for (int j = 0; j < b.dim() && !builder.full(); ++j) builder.add(g.bracket(a.vector(i), b.vector(j)));
  return builder.span();
}

RealSpan image(const LinearAlgebraMap& m, const RealSpan& s) {
  std::vector<QVector> out;
  for (int i = 0; i < s.dim(); ++i) out.push_back(m(s.vector(i)));
  return span_of(out, static_cast<int>(m.action.rows()));
}

RealSpan center(const RealFormAlgebra& g) { return centralizer(g, whole(g), whole(g)); }

namespace {

struct SparseMatrix {
  std::vector<std::tuple<int, int, Rational>> entries;
};

SparseMatrix to_sparse(const QMatrix& m) {
  SparseMatrix s;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) s.entries.emplace_back(static_cast<int>(i), static_cast<int>(j), m(i, j));
  return s;
}

// tr(A B) with A sparse and B dense.
Rational trace_product(const SparseMatrix& a, const QMatrix& b) {
  Rational t = 0;
  for (const auto& [i, j, v] : a.entries)
    if (sgn(b(j, i)) != 0) t += v * b(j, i);
  return t;
}

QMatrix gram_of(const std::vector<QMatrix>& ads) {
  const int n = static_cast<int>(ads.size());
  std::vector<SparseMatrix> sp;
  for (const auto& a : ads) sp.push_back(to_sparse(a));
  QMatrix gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      gram(i, j) = trace_product(sp[i], ads[j]);
      gram(j, i) = gram(i, j);
    }
  return gram;
}

} // namespace

Rational killing(const RealFormAlgebra& g, const QVector& x, const QVector& y) {
  return trace_product(to_sparse(g.ad(x)), g.ad(y));
}

QMatrix killing_gram(const RealFormAlgebra& g, const RealSpan& s) {
  std::vector<QMatrix> ads;
  for (int i = 0; i < s.dim(); ++i) ads.push_back(g.ad(s.vector(i)));
  return gram_of(ads);
}

void certify_cartan(const RealFormAlgebra& g, const LinearAlgebraMap& theta) {
  certify_involution(theta);
  const RealSpan k = fixed_subspace(g, theta, 1);
  const RealSpan p = fixed_subspace(g, theta, -1);
  const Inertia ik = inertia(killing_gram(g, k));
  const Inertia ip = inertia(killing_gram(g, p));
  if (ik.negative != k.dim())
    throw NotCartan("Killing form is not negative definite on the fixed algebra of " + theta.name);
  if (ip.positive != p.dim())
    throw NotCartan("Killing form is not positive definite on the -1 eigenspace of " + theta.name);
}

int real_rank(const RealFormAlgebra& g, const LinearAlgebraMap& theta, bool certify) {
  if (certify) certify_cartan(g, theta);
  return maximal_abelian(g, fixed_subspace(g, theta, -1)).dim();
}

int real_rank_of_pair(const RealFormAlgebra& g, const LinearAlgebraMap& tau,
                      const LinearAlgebraMap& theta, bool certify) {
  if (certify) certify_cartan(g, theta);
  if (!commute(tau, theta)) throw ConditionFailed(tau.name + " does not commute with " + theta.name);
  return maximal_abelian(g, multi_fixed(g, {{&theta, -1}, {&tau, -1}})).dim();
}

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  os << "(dim " << dim << ", center " << center_dim << ", rank " << real_rank << ", killing (+"
     << killing.positive << ",-" << killing.negative << "," << killing.zero << "))";
  return os.str();
}

Fingerprint fingerprint(const RealFormAlgebra& g, const RealSpan& h, const LinearAlgebraMap& theta) {
  const int hd = h.dim();
  Fingerprint fp;
  fp.dim = hd;
  // structure of h in its own echelon basis
  std::vector<QMatrix> ads(hd, QMatrix::Zero(hd, hd));
  for (int i = 0; i < hd; ++i)
    for (int j = i + 1; j < hd; ++j) {
      auto c = h.coordinates(g.bracket(h.vector(i), h.vector(j)));
      if (!c) throw NotClosedUnderBracket("fingerprint: subspace is not a subalgebra of " + g.label());
      ads[i].col(j) = *c;
      ads[j].col(i) = -*c;
    }
  fp.killing = inertia(gram_of(ads));
  EchelonBuilder builder(hd);
  for (int j = 0; j < hd && !builder.full(); ++j)
    for (int k = 0; k < hd && !builder.full(); ++k) {
      QVector row(hd);
      for (int i = 0; i < hd; ++i) row(i) = ads[i](k, j);
      builder.add(std::move(row));
    }
  fp.center_dim = hd - builder.rank();
  fp.real_rank = maximal_abelian(g, intersect(h, fixed_subspace(g, theta, -1))).dim();
  return fp;
}

RealSpan to_ambient(const RealFormAlgebra& g, const RealSpan& s) {
  std::vector<QVector> out;
  for (int i = 0; i < s.dim(); ++i) out.push_back(flatten(g.element(s.vector(i))));
  const int n = g.ambient_size();
  return span_of(out, 2 * n * n);
}

RealSpan from_ambient(const RealFormAlgebra& g, const RealSpan& ambient) {
  std::vector<QVector> out;
  for (int i = 0; i < ambient.dim(); ++i) {
    auto c = g.span().coordinates(ambient.vector(i));
    if (!c) throw NotStable("subspace leaves " + g.label());
    out.push_back(*c);
  }
  return span_of(out, g.dim());
}

} // namespace vis

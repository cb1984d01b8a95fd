#include "vis/roots.hpp"

#include <algorithm>
#include <numeric>

namespace vis {

namespace {

bool lex_less(const QVector& a, const QVector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

// Restriction of ad(h) to the span v, in the echelon coordinates of v.
QMatrix restricted_ad(const RealFormAlgebra& g, const QVector& h, const RealSpan& v) {
  QMatrix l(v.dim(), v.dim());
  for (int i = 0; i < v.dim(); ++i) {
    const auto c = v.coordinates(g.bracket(h, v.vector(i)));
    if (!c) throw ConditionFailed("torus element does not preserve a joint eigenspace");
    l.col(i) = *c;
  }
  return l;
}

using IntRow = std::vector<mpz_class>;

// Row-style Hermite normal form; zero rows dropped.
std::vector<IntRow> hermite_rows(std::vector<IntRow> rows, int cols) {
  int top = 0;
  for (int c = 0; c < cols && top < static_cast<int>(rows.size()); ++c) {
    while (true) {
      int best = -1;
      for (int r = top; r < static_cast<int>(rows.size()); ++r)
        if (sgn(rows[r][c]) != 0 && (best < 0 || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
      if (best < 0) break;
      std::swap(rows[top], rows[best]);
      bool clean = true;
      for (int r = top + 1; r < static_cast<int>(rows.size()); ++r) {
        if (sgn(rows[r][c]) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[top][c].get_mpz_t());
        for (int k = 0; k < cols; ++k) rows[r][k] -= q * rows[top][k];
        if (sgn(rows[r][c]) != 0) clean = false;
      }
      if (clean) break;
    }
    if (top < static_cast<int>(rows.size()) && sgn(rows[top][c]) != 0) {
      if (sgn(rows[top][c]) < 0)
        for (auto& x : rows[top]) x = -x;
      for (int r = 0; r < top; ++r) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[top][c].get_mpz_t());
        for (int k = 0; k < cols; ++k) rows[r][k] -= q * rows[top][k];
      }
      ++top;
    }
  }
  rows.resize(top);
  return rows;
}

int leading(const IntRow& r) {
  for (int i = 0; i < static_cast<int>(r.size()); ++i)
    if (sgn(r[i]) != 0) return i;
  return -1;
}

IntRow lattice_coords(IntRow v, const std::vector<IntRow>& basis) {
  IntRow c(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const int p = leading(basis[k]);
    if (!mpz_divisible_p(v[p].get_mpz_t(), basis[k][p].get_mpz_t()))
      throw ConditionFailed("root outside its own lattice");
    c[k] = v[p] / basis[k][p];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c[k] * basis[k][j];
  }
  if (std::any_of(v.begin(), v.end(), [](const mpz_class& x) { return sgn(x) != 0; }))
    throw ConditionFailed("root outside its own lattice");
  return c;
}

int block_sign(const Signature& eps, int block) { return block < 0 ? 1 : eps.values[block]; }

} // namespace

std::optional<int> RootDatum::index_of(const QVector& root) const {
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (roots[i] == root) return static_cast<int>(i);
  return std::nullopt;
}

RootDatum root_decomposition(const AlgebraPtr& gp, const RealSpan& torus) {
  const RealFormAlgebra& g = *gp;
  if (!is_abelian(g, torus)) throw ConditionFailed("torus is not abelian");
  RootDatum d;
  d.g = gp;
  d.torus = torus;
  for (int k = 0; k < torus.dim(); ++k) d.torus_basis.push_back(torus.vector(k));
  const int r = d.rank();

  std::vector<std::pair<std::vector<Rational>, RealSpan>> pieces{{{}, whole(g)}};
  for (const auto& h : d.torus_basis) {
    std::vector<std::pair<std::vector<Rational>, RealSpan>> next;
    for (auto& [vals, v] : pieces) {
      for (auto& e : rational_eigenspaces(restricted_ad(g, h, v))) {
        QMatrix rows = multiply(e.space.basis(), v.basis());
        auto w = vals;
        w.push_back(e.value);
        next.push_back({std::move(w), RealSpan::from_rows(std::move(rows))});
      }
    }
    pieces = std::move(next);
  }

  std::vector<std::pair<QVector, RealSpan>> nonzero;
  d.zero_space = RealSpan(g.dim());
  for (auto& [vals, v] : pieces) {
    QVector lam(r);
    for (int k = 0; k < r; ++k) lam[k] = vals[k];
    if (lam.isZero()) d.zero_space = v;
    else nonzero.push_back({lam, v});
  }
  std::sort(nonzero.begin(), nonzero.end(), [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  for (auto& [lam, v] : nonzero) {
    d.roots.push_back(lam);
    d.root_spaces.push_back(v);
  }

  int total = d.zero_space.dim();
  for (const auto& s : d.root_spaces) total += s.dim();
  if (total != g.dim()) throw NotDiagonalizable("joint eigenspaces do not fill the algebra");
  for (const auto& lam : d.roots)
    if (!d.index_of(QVector(-lam))) throw ConditionFailed("root set is not symmetric");

  d.adapted = QMatrix(g.dim(), g.dim());
  int col = 0;
  auto place = [&](const RealSpan& s, int block) {
    for (int i = 0; i < s.dim(); ++i) {
      d.adapted.col(col++) = s.vector(i);
      d.block_of_column.push_back(block);
    }
  };
  place(d.zero_space, -1);
  for (std::size_t i = 0; i < d.root_spaces.size(); ++i) place(d.root_spaces[i], static_cast<int>(i));
  auto inv = inverse(d.adapted);
  if (!inv) throw NotDiagonalizable("root spaces are not independent");
  d.adapted_inverse = std::move(*inv);

  // integer lattice of the roots
  d.denominator = 1;
  for (const auto& lam : d.roots)
    for (int k = 0; k < r; ++k) mpz_lcm(d.denominator.get_mpz_t(), d.denominator.get_mpz_t(), lam[k].get_den_mpz_t());
  std::vector<IntRow> int_roots;
  for (const auto& lam : d.roots) {
    IntRow row(r);
    for (int k = 0; k < r; ++k) row[k] = mpz_class(lam[k] * d.denominator);
    int_roots.push_back(row);
  }
  d.lattice_basis = hermite_rows(int_roots, r);
  for (const auto& row : int_roots) d.root_coords.push_back(lattice_coords(row, d.lattice_basis));

  // grading table
  const int blocks = static_cast<int>(d.roots.size());
  auto space_of = [&](int b) -> const RealSpan& { return b < 0 ? d.zero_space : d.root_spaces[b]; };
  for (int s = -1; s < blocks; ++s)
    for (int t = s; t < blocks; ++t) {
      const RealSpan &a = space_of(s), &b = space_of(t);
      bool hit = false;
      for (int i = 0; i < a.dim() && !hit; ++i)
        for (int j = 0; j < b.dim() && !hit; ++j) hit = !g.bracket(a.vector(i), b.vector(j)).isZero();
      if (hit) d.nonzero_brackets.push_back({s, t});
    }

  d.cartan_integral = true;
  if (r > 0) {
    QMatrix gram(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) gram(i, j) = killing(g, d.torus_basis[i], d.torus_basis[j]);
    const auto gi = inverse(gram);
    if (!gi) {
      d.cartan_integral = false;
    } else {
      auto pairing = [&](const QVector& a, const QVector& b) { return Rational(a.dot(multiply(*gi, b))); };
      for (const auto& a : d.roots)
        for (const auto& b : d.roots) {
          const Rational c = 2 * pairing(a, b) / pairing(b, b);
          if (c.get_den() != 1) d.cartan_integral = false;
        }
    }
  }
  return d;
}

RealSpan rational_torus(const RealFormAlgebra& g, const RealSpan& space) {
  std::vector<QVector> chosen;
  auto rational_ad = [&](const QVector& x) {
    try {
      rational_eigenspaces(g.ad(x));
      return true;
    } catch (const NonRationalSpectrum&) {
      return false;
    } catch (const NotDiagonalizable&) {
      return false;
    }
  };
  while (true) {
    const RealSpan a = span_of(chosen, g.dim());
    const RealSpan c = centralizer(g, a, space);
    if (c.dim() == a.dim()) return a;
    std::vector<QVector> fresh;
    for (int i = 0; i < c.dim(); ++i)
      if (!a.contains(c.vector(i))) fresh.push_back(c.vector(i));
    std::optional<QVector> pick;
    for (const auto& x : fresh)
      if (rational_ad(x)) {
        pick = x;
        break;
      }
    for (std::size_t i = 0; i < fresh.size() && !pick; ++i)
      for (std::size_t j = i + 1; j < fresh.size() && !pick; ++j)
        for (int s : {1, -1}) {
          QVector x = fresh[i] + Rational(s) * fresh[j];
          if (!a.contains(x) && rational_ad(x)) {
            pick = x;
            break;
          }
        }
    if (!pick) throw NonRationalSpectrum("no element with rational ad-spectrum extends the torus");
    chosen.push_back(*pick);
  }
}

std::string Signature::to_string() const {
  if (generators == 0) return "e";
  std::string s;
  for (int k = 0; k < generators; ++k) s += (mask >> k) & 1u ? '-' : '+';
  return s;
}

std::vector<Signature> signatures(const RootDatum& d) {
  const int s = d.lattice_rank();
  std::vector<Signature> out;
  for (unsigned mask = 0; mask < (1u << s); ++mask) {
    Signature e;
    e.mask = mask;
    e.generators = s;
    for (const auto& c : d.root_coords) {
      int v = 1;
      for (int k = 0; k < s; ++k)
        if (((mask >> k) & 1u) && mpz_odd_p(c[k].get_mpz_t())) v = -v;
      e.values.push_back(v);
    }
    out.push_back(std::move(e));
  }
  return out;
}

bool is_multiplicative(const RootDatum& d, const Signature& eps) {
  const int n = static_cast<int>(d.roots.size());
  for (int i = 0; i < n; ++i) {
    if (eps.values[i] != eps.values[*d.index_of(QVector(-d.roots[i]))]) return false;
    for (int j = 0; j < n; ++j) {
      const QVector s = d.roots[i] + d.roots[j];
      const auto k = d.index_of(s);
      if (k && eps.values[*k] != eps.values[i] * eps.values[j]) return false;
    }
  }
  return true;
}

LinearAlgebraMap tau_epsilon(const LinearAlgebraMap& tau, const Signature& eps, const RootDatum& d,
                             bool full_bracket_check) {
  for (const auto& h : d.torus_basis)
    if (tau(h) != QVector(-h)) throw ConditionFailed("tau is not -1 on the torus");
  for (const auto& [s, t] : d.nonzero_brackets) {
    QVector sum = QVector::Zero(d.rank());
    if (s >= 0) sum += d.roots[s];
    if (t >= 0) sum += d.roots[t];
    int target = -1;
    if (!sum.isZero()) {
      const auto k = d.index_of(sum);
      if (!k) throw ConditionFailed("bracket lands outside the root spaces");
      target = *k;
    }
    if (block_sign(eps, s) * block_sign(eps, t) != block_sign(eps, target))
      throw NotAutomorphism("signature " + eps.to_string() + " breaks the grading on root blocks (" +
                            std::to_string(s) + ", " + std::to_string(t) + ")");
  }
  LinearAlgebraMap out;
  out.algebra = tau.algebra;
  out.name = tau.name + "_eps[" + eps.to_string() + "]";
  if (eps.trivial()) {
    out.action = tau.action;
  } else {
    QMatrix scaled_cols = d.adapted;
    for (int c = 0; c < scaled_cols.cols(); ++c)
      if (block_sign(eps, d.block_of_column[c]) < 0) scaled_cols.col(c) = -scaled_cols.col(c);
    out.action = multiply(tau.action, multiply(scaled_cols, d.adapted_inverse));
  }
  if (!is_involution(out)) throw NotInvolution(out.name + " does not square to the identity");
  if (full_bracket_check) certify_involution(out);
  return out;
}

TwistReport verify_twisted_pair(const LinearAlgebraMap& sigma, const LinearAlgebraMap& tau,
                                const LinearAlgebraMap& theta, const RootDatum& d, const Signature& eps,
                                bool full_bracket_check) {
  const RealFormAlgebra& g = *d.g;
  TwistReport rep;
  rep.signature = eps.to_string();
  for (const auto& h : d.torus_basis)
    if (theta(h) != QVector(-h) || sigma(h) != h || tau(h) != QVector(-h))
      throw ConditionFailed("torus is not inside g^{-theta,sigma,-tau}");
  LinearAlgebraMap te;
  try {
    te = tau_epsilon(tau, eps, d, full_bracket_check);
    rep.involution = rep.automorphism = true;
  } catch (const NotInvolution& e) {
    rep.detail = e.what();
    return rep;
  } catch (const NotAutomorphism& e) {
    rep.involution = true;
    rep.detail = e.what();
    return rep;
  }
  rep.commutes_sigma = commute(sigma, te);
  rep.commutes_theta = commute(theta, te);
  rep.rank_pair = maximal_abelian(g, multi_fixed(g, {{&theta, -1}, {&te, -1}})).dim();
  rep.rank_slice = maximal_abelian(g, multi_fixed(g, {{&theta, -1}, {&sigma, 1}, {&te, -1}})).dim();
  rep.rank_equal = rep.rank_pair == rep.rank_slice;
  if (rep.commutes_theta) rep.fixed = fingerprint(g, fixed_subspace(g, te, 1), theta);
  if (!rep.commutes_sigma) rep.detail += "sigma does not commute with tau_eps; ";
  if (!rep.commutes_theta) rep.detail += "theta does not commute with tau_eps; ";
  if (!rep.rank_equal) rep.detail += "rank drops on the slice space; ";
  return rep;
}

RealSpan family_torus(const RealFormAlgebra& g, const LinearAlgebraMap& tau, const LinearAlgebraMap& theta,
                      const LinearAlgebraMap* sigma) {
  if (sigma) return rational_torus(g, multi_fixed(g, {{&theta, -1}, {sigma, 1}, {&tau, -1}}));
  return rational_torus(g, multi_fixed(g, {{&theta, -1}, {&tau, -1}}));
}

std::vector<EpsilonEntry> epsilon_family(const LinearAlgebraMap& tau, const LinearAlgebraMap& theta,
                                         const LinearAlgebraMap* sigma, bool full_bracket_check) {
  const AlgebraPtr& g = tau.algebra;
  const LinearAlgebraMap id = identity_map(g);
  const LinearAlgebraMap& s = sigma ? *sigma : id;
  const RootDatum d = root_decomposition(g, family_torus(*g, tau, theta, sigma));
  std::vector<EpsilonEntry> out;
  for (auto& eps : signatures(d)) {
    TwistReport rep = verify_twisted_pair(s, tau, theta, d, eps, full_bracket_check);
    out.push_back({std::move(eps), std::move(rep)});
  }
  return out;
}

std::vector<int> positive_system(const RootDatum& d, const std::optional<QVector>& functional) {
  std::vector<int> out;
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    const QVector& lam = d.roots[i];
    int sign = 0;
    if (functional) {
      if (functional->size() != d.rank()) throw std::invalid_argument("functional has the wrong length");
      sign = sgn(Rational(functional->dot(lam)));
      if (sign == 0) throw DegenerateFunctional("functional vanishes on root " + std::to_string(i));
    } else {
      for (int k = 0; k < lam.size() && sign == 0; ++k) sign = sgn(lam[k]);
    }
    if (sign > 0) out.push_back(static_cast<int>(i));
  }
  return out;
}

NilpotentPart nilpotent_part(const RootDatum& d, const std::vector<int>& positive) {
  const RealFormAlgebra& g = *d.g;
  NilpotentPart out;
  out.space = RealSpan(g.dim());
  for (int i : positive) out.space = sum(out.space, d.root_spaces[i]);
  if (!is_subalgebra(g, out.space)) throw ConditionFailed("positive root spaces do not close under bracket");
  RealSpan c = out.space;
  while (c.dim() > 0) {
    RealSpan next = bracket_span(g, out.space, c);
    if (next.dim() >= c.dim()) throw ConditionFailed("lower central series stalls");
    c = std::move(next);
    ++out.central_series_length;
  }
  return out;
}

bool stabilizes(const LinearAlgebraMap& m, const RealSpan& s) { return image(m, s) == s; }

} // namespace vis

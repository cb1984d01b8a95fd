#include "vis/analysis.hpp"

namespace vis {

TripleReport verify_triple(const RealFormAlgebra& g, const LinearAlgebraMap& tau, const LinearAlgebraMap& theta,
                           const LinearAlgebraMap& sigma, const QVector& z, bool certify_theta) {
  if (certify_theta) certify_cartan(g, theta);
  TripleReport rep;
  const bool st = commute(sigma, tau), sth = commute(sigma, theta), tth = commute(tau, theta);
  rep.commute = st && sth && tth;
  if (!st) rep.witness += "sigma and tau do not commute; ";
  if (!sth) rep.witness += "sigma and theta do not commute; ";
  if (!tth) rep.witness += "tau and theta do not commute; ";
  const RealSpan pair = multi_fixed(g, {{&theta, -1}, {&tau, -1}});
  const RealSpan slice = multi_fixed(g, {{&theta, -1}, {&sigma, 1}, {&tau, -1}});
  rep.rank_pair = maximal_abelian(g, pair).dim();
  rep.rank_slice = maximal_abelian(g, slice).dim();
  rep.rank_equal = rep.rank_pair == rep.rank_slice;
  if (!rep.rank_equal)
    rep.witness += "rank " + std::to_string(rep.rank_slice) + " on the slice space vs " +
                   std::to_string(rep.rank_pair) + "; ";
  rep.anti_holomorphic = sigma(z) == QVector(-z);
  if (!rep.anti_holomorphic) rep.witness += "sigma Z != -Z; ";
  return rep;
}

TripleReport verify_triple(const InvolutionTriple& t, bool certify_theta) {
  return verify_triple(*t.g, t.tau, t.theta, t.sigma, t.z.coords, certify_theta);
}

RealSpan slice_subspace(const RealFormAlgebra& g, const LinearAlgebraMap& tau, const LinearAlgebraMap& theta,
                        const LinearAlgebraMap& sigma) {
  const RealSpan a = maximal_abelian(g, multi_fixed(g, {{&theta, -1}, {&sigma, 1}, {&tau, -1}}));
  if (!is_abelian(g, a)) throw ConditionFailed("slice subspace is not abelian");
  for (int i = 0; i < a.dim(); ++i) {
    const QVector x = a.vector(i);
    if (theta(x) != QVector(-x) || sigma(x) != x || tau(x) != QVector(-x))
      throw ConditionFailed("slice subspace leaves one of the eigenspaces");
  }
  return a;
}

long verify_rank_formula(const TableRow& row, const ParamMap& params, const InvolutionTriple& t) {
  const TripleReport rep = verify_triple(t, false);
  if (!row.rank) {
    if (!rep.rank_equal)
      throw RankMismatch(row.id() + ": slice rank " + std::to_string(rep.rank_slice) + " vs pair rank " +
                         std::to_string(rep.rank_pair));
    return rep.rank_pair;
  }
  const long expected = evaluate_integer(*row.rank, params);
  if (rep.rank_pair != expected || rep.rank_slice != expected)
    throw RankMismatch(row.id() + " (" + format_params(params) + "): expected " + std::to_string(expected) +
                       ", computed " + std::to_string(rep.rank_pair) + " / " + std::to_string(rep.rank_slice));
  return expected;
}

long verify_rank_formula(const TableRow& row, const ParamMap& params) {
  return verify_rank_formula(row, params, catalog_triple(row, params));
}

RowReport data_only_report(const TableRow& row) {
  RowReport rep;
  rep.row_id = row.id();
  rep.status = "data-only";
  rep.detail = "no matrix model for " + row.g;
  return rep;
}

RowReport verify_row(const TableRow& row, const ParamMap& params) {
  if (!row.implementable) return data_only_report(row);
  RowReport rep;
  rep.row_id = row.id();
  rep.params = params;
  try {
    const InvolutionTriple t = catalog_triple(row, params);
    rep.triple = verify_triple(t);
    std::string problems = rep.triple.witness;

    const Holomorphy h = holomorphic_type(t.tau, t.z.coords);
    rep.holomorphy = to_string(h);
    const Holomorphy want = row.table == 2 ? Holomorphy::AntiHolomorphic : Holomorphy::Holomorphic;
    if (h != want) problems += "tau is " + rep.holomorphy + ", table says " + to_string(want) + "; ";

    if (row.rank) rep.expected_rank = evaluate_integer(*row.rank, params);
    verify_rank_formula(row, params, t);

    const LinearAlgebraMap tau_theta = compose(t.tau, t.theta, "tau theta");
    if (row.table == 2) {
      // sigma = tau theta makes the two spaces coincide
      const RealSpan a = multi_fixed(*t.g, {{&t.sigma, 1}, {&tau_theta, 1}});
      if (a != fixed_subspace(*t.g, tau_theta, 1)) problems += "g^{sigma,tau theta} != g^{tau theta}; ";
    }
    if (row.table == 1 && !commute(t.sigma, tau_theta)) problems += "sigma and tau theta do not commute; ";

    const RealSpan a = slice_subspace(*t.g, t.tau, t.theta, t.sigma);
    rep.slice_dim = a.dim();
    if (a.dim() != rep.triple.rank_pair) problems += "slice dimension differs from the rank; ";

    rep.status = problems.empty() ? "pass" : "fail";
    rep.detail = problems;
  } catch (const Error& e) {
    rep.status = "fail";
    rep.detail = e.what();
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

ExactMatrix pair_block(const ExactMatrix& a, const ExactMatrix& b) { return block_diagonal(a, b); }

InvolutionRecipe pair_recipe(const InvolutionRecipe& a, const InvolutionRecipe& b) {
  if (a.conj != b.conj || a.neg_transpose != b.neg_transpose || a.sign != b.sign)
    throw ConditionFailed("factor involutions must share their structural flags");
  return InvolutionRecipe::make(pair_block(a.conjugator, b.conjugator), a.conj, a.neg_transpose, a.sign);
}

} // namespace

Realization direct_sum(const Realization& base) {
  const int m = base.g->ambient_size();
  const ExactMatrix zero = ExactMatrix::Zero(m, m);
  std::vector<ExactMatrix> basis;
  for (const auto& x : base.g->basis()) basis.push_back(pair_block(x, zero));
  for (const auto& x : base.g->basis()) basis.push_back(pair_block(zero, x));
  Realization r;
  r.family = base.family + "+" + base.family;
  r.params = base.params;
  r.compact = base.compact;
  r.g = make_algebra(basis, base.g->label() + "+" + base.g->label());
  r.theta_recipe = pair_recipe(base.theta_recipe, base.theta_recipe);
  r.theta = map_from_recipe(r.g, r.theta_recipe, "theta");
  return r;
}

InvolutionTriple diagonal_setup(const Realization& base, const InvolutionRecipe& sigma_prime, DiagonalVariant v) {
  const Realization sum = direct_sum(base);
  const int m = base.g->ambient_size();
  const CharacteristicElement z = characteristic_element(base);
  InvolutionTriple t;
  t.g = sum.g;
  t.theta = sum.theta;
  const InvolutionRecipe swap = InvolutionRecipe::make(swap_unit(m));
  t.tau = map_from_recipe(t.g, swap, "tau");
  ExactMatrix zpair;
  if (v == DiagonalVariant::SameComplex) {
    t.name = "diag " + base.g->label() + " on D x D";
    t.sigma = map_from_recipe(t.g, pair_recipe(sigma_prime, sigma_prime), "sigma");
    zpair = pair_block(z.matrix, z.matrix);
  } else {
    t.name = "diag " + base.g->label() + " on D x conj(D)";
    t.sigma = map_from_recipe(t.g, compose(swap, sum.theta_recipe), "sigma");
    zpair = pair_block(z.matrix, scaled(z.matrix, GaussianRational(-1)));
  }
  certify_involution(t.tau);
  certify_involution(t.sigma);
  t.z = {t.g->coordinates(zpair), zpair};
  if (!is_characteristic(*t.g, t.theta, t.z.coords))
    throw NotHermitianType("paired characteristic element fails on " + t.g->label());
  return t;
}

bool is_maximal_abelian_in(const RealFormAlgebra& g, const RealSpan& a, const RealSpan& within) {
  if (!within.contains(a) || !is_abelian(g, a)) return false;
  return centralizer(g, a, within) == a;
}

CompactReport verify_compact_conditions(const RealFormAlgebra& g, const LinearAlgebraMap& tau,
                                        const LinearAlgebraMap& theta, const LinearAlgebraMap& sigma,
                                        const QVector& z) {
  CompactReport rep;
  rep.commute = commute(sigma, theta) && commute(sigma, tau);
  const RealSpan pair = multi_fixed(g, {{&tau, -1}, {&theta, -1}});
  const RealSpan slice = multi_fixed(g, {{&sigma, 1}, {&tau, -1}, {&theta, -1}});
  rep.torus = maximal_abelian(g, slice);
  rep.rank = rep.torus.dim();
  rep.contains_maximal = is_maximal_abelian_in(g, rep.torus, pair);
  rep.anti_holomorphic = sigma(z) == QVector(-z);
  return rep;
}

CompactDiagonal compact_diag_setup(const Realization& compact_base, const InvolutionRecipe& theta1,
                                   const InvolutionRecipe& theta2, const InvolutionRecipe& sigma_prime) {
  const Realization sum = direct_sum(compact_base);
  const int m = compact_base.g->ambient_size();
  CompactDiagonal out;
  InvolutionTriple& t = out.triple;
  t.name = "diag " + compact_base.g->label() + " on a product of two compact quotients";
  t.g = sum.g;
  t.theta = map_from_recipe(t.g, pair_recipe(theta1, theta2), "theta");
  t.tau = map_from_recipe(t.g, InvolutionRecipe::make(swap_unit(m)), "tau");
  t.sigma = map_from_recipe(t.g, pair_recipe(sigma_prime, sigma_prime), "sigma");
  for (const auto* map : {&t.theta, &t.tau, &t.sigma}) certify_involution(*map);
  const auto z1 = characteristic_element(*compact_base.g, map_from_recipe(compact_base.g, theta1, "theta1"));
  const auto z2 = characteristic_element(*compact_base.g, map_from_recipe(compact_base.g, theta2, "theta2"));
  const ExactMatrix zpair = pair_block(z1.matrix, z2.matrix);
  t.z = {t.g->coordinates(zpair), zpair};
  out.report = verify_compact_conditions(*t.g, t.tau, t.theta, t.sigma, t.z.coords);
  if (!out.report.commute) throw ConditionFailed("sigma does not commute with tau and theta");
  if (!out.report.contains_maximal)
    throw ConditionFailed("g^{sigma,-tau,-theta} holds no maximal abelian subspace of g^{-tau,-theta}");
  if (!out.report.anti_holomorphic) throw ConditionFailed("sigma is not anti-holomorphic");
  return out;
}

} // namespace vis

#include "helpers.hpp"

#include "vis/labels.hpp"
#include "vis/realizations.hpp"

#include <gtest/gtest.h>

using namespace vis;

namespace {

ExactMatrix e(int n, int i, int j) { return elementary(n, i, j); }

std::vector<ExactMatrix> sl2_basis() {
  ExactMatrix h = diagonal({1, -1});
  return {h, e(2, 0, 1), e(2, 1, 0)};
}

QVector random_coords(int dim, std::mt19937_64& rng) {
  return testing_support::random_rational(dim, 1, rng, 3, 2).col(0);
}

}  // namespace

TEST(Algebra, Sl2StructureConstants) {
  const AlgebraPtr g = make_algebra(sl2_basis(), "sl2");
  EXPECT_EQ(g->dim(), 3);
  // [e, f] = h in ambient terms
  const QVector ce = g->coordinates(e(2, 0, 1)), cf = g->coordinates(e(2, 1, 0));
  EXPECT_EQ(g->element(g->bracket(ce, cf)), diagonal({1, -1}));
}

TEST(Algebra, NotClosedIsRejected) {
  EXPECT_THROW(make_algebra({e(2, 0, 1), e(2, 1, 0)}, "broken"), NotClosedUnderBracket);
}

TEST(Algebra, CoordinatesOutsideThrow) {
  const AlgebraPtr g = make_algebra(sl2_basis(), "sl2");
  EXPECT_THROW(g->coordinates(identity(2)), NotStable);
  EXPECT_FALSE(g->try_coordinates(identity(2)).has_value());
}

// property: Jacobi identity and antisymmetry of the cached bracket
TEST(LieProperties, JacobiAndAntisymmetry) {
  std::mt19937_64 rng(21);
  for (const auto& [fam, params] : std::vector<std::pair<std::string, std::vector<int>>>{
           {"su", {2, 1}}, {"sp_R", {2}}, {"so_star", {4}}, {"so2", {2}}, {"sl_R", {3}}}) {
    const Realization r = build(fam, params);
    const auto& g = *r.g;
    for (int t = 0; t < 5; ++t) {
      const QVector x = random_coords(g.dim(), rng), y = random_coords(g.dim(), rng),
                    z = random_coords(g.dim(), rng);
      EXPECT_EQ(g.bracket(x, y), QVector(-g.bracket(y, x))) << fam;
      const QVector jac = g.bracket(x, g.bracket(y, z)) + g.bracket(y, g.bracket(z, x)) + g.bracket(z, g.bracket(x, y));
      EXPECT_TRUE(is_zero_matrix(QMatrix(jac))) << fam;
      // bracket agrees with the matrix commutator
      EXPECT_EQ(g.element(g.bracket(x, y)), commutator(g.element(x), g.element(y))) << fam;
    }
  }
}

TEST(Realizations, Dimensions) {
  EXPECT_EQ(build("su", {2, 1}).g->dim(), 8);
  EXPECT_EQ(build("su", {3, 2}).g->dim(), 24);
  EXPECT_EQ(build("sp_R", {3}).g->dim(), 21);
  EXPECT_EQ(build("so_star", {6}).g->dim(), 15);
  EXPECT_EQ(build("so2", {3}).g->dim(), 10);
  EXPECT_EQ(build("sl_R", {3}).g->dim(), 8);
  EXPECT_EQ(build("su_compact", {3}).g->dim(), 8);
  EXPECT_EQ(build("sp_compact", {2}).g->dim(), 10);
  EXPECT_EQ(build("so_compact", {4}).g->dim(), 6);
}

TEST(Realizations, BadInputs) {
  EXPECT_THROW(build("g2", {1}), UnsupportedFamily);
  EXPECT_THROW(build("su", {2}), ParameterOutOfRange);
  EXPECT_THROW(build("so_star", {3}), ParameterOutOfRange);
  EXPECT_THROW(build("su", {5, 5}), ParameterOutOfRange);  // ambient 10 over the default cap
}

// real rank against the closed forms of the Hermitian families
TEST(Realizations, RealRankClosedForms) {
  for (int p = 1; p <= 4; ++p)
    for (int q = 1; q <= p && p + q <= 6; ++q) {
      const Realization r = build("su", {p, q});
      EXPECT_EQ(real_rank(*r.g, r.theta), q);
    }
  for (int n = 1; n <= 3; ++n) {
    const Realization r = build("sp_R", {n});
    EXPECT_EQ(real_rank(*r.g, r.theta), n);
  }
  for (int n = 2; n <= 4; ++n) {
    const Realization r = build("so_star", {2 * n});
    EXPECT_EQ(real_rank(*r.g, r.theta), n / 2);
  }
  for (int n = 1; n <= 5; ++n) {
    const Realization r = build("so2", {n});
    EXPECT_EQ(real_rank(*r.g, r.theta), std::min(n, 2));
  }
}

// independent oracle: B(X, Y) = 2m Re tr(XY) on su(p,q) and sl(m,R)
TEST(Killing, TraceFormula) {
  std::mt19937_64 rng(4);
  for (const auto& [fam, params, m] : std::vector<std::tuple<std::string, std::vector<int>, int>>{
           {"su", {2, 1}, 3}, {"sl_R", {3}, 3}, {"su", {2, 2}, 4}}) {
    const Realization r = build(fam, params);
    for (int t = 0; t < 4; ++t) {
      const QVector x = random_coords(r.g->dim(), rng), y = random_coords(r.g->dim(), rng);
      const ExactMatrix xy = r.g->element(x) * r.g->element(y);
      GaussianRational tr = trace(xy);
      EXPECT_EQ(killing(*r.g, x, y), Rational(2 * m) * tr.re) << fam;
    }
  }
}

TEST(Cartan, CertifiedForNoncompactFamilies) {
  for (const auto& [fam, params] : std::vector<std::pair<std::string, std::vector<int>>>{
           {"su", {2, 1}}, {"sp_R", {2}}, {"so_star", {6}}, {"so2", {3}}, {"sl_R", {3}}}) {
    const Realization r = build(fam, params);
    EXPECT_NO_THROW(certify_cartan(*r.g, r.theta)) << fam;
    EXPECT_TRUE(is_involution(r.theta));
    EXPECT_TRUE(is_automorphism(r.theta));
  }
  // the identity is not a Cartan involution of a noncompact algebra
  const Realization r = build("sl_R", {2});
  EXPECT_THROW(certify_cartan(*r.g, identity_map(r.g)), NotCartan);
}

TEST(Characteristic, HermitianFamiliesHaveOne) {
  for (const auto& [fam, params] : std::vector<std::pair<std::string, std::vector<int>>>{
           {"su", {2, 1}}, {"sp_R", {2}}, {"so_star", {4}}, {"so2", {3}}, {"sl_R", {2}}}) {
    const Realization r = build(fam, params);
    const CharacteristicElement z = characteristic_element(r);
    EXPECT_TRUE(is_characteristic(*r.g, r.theta, z.coords)) << fam;
    // the fallback through the center of k agrees up to sign
    const CharacteristicElement z2 = characteristic_element(*r.g, r.theta);
    EXPECT_TRUE(z2.coords == z.coords || z2.coords == QVector(-z.coords)) << fam;
  }
  const Realization r = build("sl_R", {3});
  EXPECT_THROW(characteristic_element(*r.g, r.theta), NotHermitianType);
}

TEST(Involutions, RecipeComposeAndConjugate) {
  const Realization r = build("su", {1, 1});
  const auto conj = InvolutionRecipe::make(identity(2), true);
  const LinearAlgebraMap c = map_from_recipe(r.g, conj, "conj");
  EXPECT_TRUE(is_involution(c));
  EXPECT_TRUE(is_automorphism(c));
  EXPECT_TRUE(commute(c, r.theta));
  const LinearAlgebraMap ct = compose(c, r.theta);
  EXPECT_EQ(ct.action, map_from_recipe(r.g, compose(conj, r.theta_recipe), "ct").action);
  EXPECT_EQ(fixed_subspace(*r.g, c, 1).dim() + fixed_subspace(*r.g, c, -1).dim(), r.g->dim());
}

TEST(Subspaces, MaximalAbelianAndCentralizer) {
  const Realization r = build("sp_R", {2});
  const RealSpan p = fixed_subspace(*r.g, r.theta, -1);
  const RealSpan a = maximal_abelian(*r.g, p);
  EXPECT_EQ(a.dim(), 2);
  EXPECT_TRUE(is_abelian(*r.g, a));
  EXPECT_EQ(centralizer(*r.g, a, p), a);
  EXPECT_TRUE(is_subalgebra(*r.g, fixed_subspace(*r.g, r.theta, 1)));
  EXPECT_EQ(center(*r.g).dim(), 0);
}

// label parser and the computed fingerprint are independent routes to the same invariant
TEST(Fingerprints, AgreeWithLabels) {
  const std::vector<std::tuple<std::string, std::vector<int>, std::string, ParamMap>> cases = {
      {"su", {2, 1}, "su(p,q)", {{"p", 2}, {"q", 1}}},
      {"sp_R", {2}, "sp(n,R)", {{"n", 2}}},
      {"so_star", {6}, "so*(2*n)", {{"n", 3}}},
      {"so2", {3}, "so(2,n)", {{"n", 3}}},
      {"sl_R", {3}, "sl(n,R)", {{"n", 3}}},
  };
  for (const auto& [fam, params, label, pm] : cases) {
    const Realization r = build(fam, params);
    EXPECT_EQ(fingerprint(*r.g, whole(*r.g), r.theta), label_fingerprint(label, pm)) << label;
  }
  const Realization k = build("so_compact", {3});
  EXPECT_EQ(fingerprint(*k.g, whole(*k.g), k.theta), label_fingerprint("so(3)", {}));
}

#include "vis/actions.hpp"
#include "vis/analysis.hpp"
#include "vis/labels.hpp"

#include <gtest/gtest.h>

using namespace vis;

namespace {

ParamMap pm(std::initializer_list<std::pair<const std::string, long>> l) { return ParamMap(l); }

}  // namespace

TEST(VerifyRow, HolomorphicRowPasses) {
  const RowReport r = verify_row(dataset_row("table1/row1"), pm({{"p", 2}, {"q", 1}, {"i", 1}, {"j", 0}}));
  EXPECT_EQ(r.status, "pass") << r.detail;
  EXPECT_EQ(r.holomorphy, "holomorphic");
  ASSERT_TRUE(r.expected_rank.has_value());
  EXPECT_EQ(*r.expected_rank, 1);
  EXPECT_EQ(r.triple.rank_pair, r.triple.rank_slice);
  EXPECT_EQ(r.slice_dim, r.triple.rank_slice);
}

TEST(VerifyRow, AntiHolomorphicRowPasses) {
  const RowReport r = verify_row(dataset_row("table2/row26"), pm({{"n", 2}}));
  EXPECT_EQ(r.status, "pass") << r.detail;
  EXPECT_EQ(r.holomorphy, "anti-holomorphic");
  EXPECT_EQ(r.triple.rank_pair, 2);
}

TEST(VerifyRow, RankFormulasOfTheCartanRows) {
  for (const auto& [id, params, rank] : std::vector<std::tuple<std::string, ParamMap, long>>{
           {"table3/su", pm({{"p", 3}, {"q", 2}}), 2},
           {"table3/so*", pm({{"n", 4}}), 2},
           {"table3/sp", pm({{"n", 3}}), 3},
           {"table3/so2", pm({{"n", 4}}), 2},
           {"table1/row9", pm({{"n", 3}, {"p", 1}}), 1},
           {"table1/row3", pm({{"n", 3}}), 1}}) {
    EXPECT_EQ(verify_rank_formula(dataset_row(id), params), rank) << id;
    const RowReport r = verify_row(dataset_row(id), params);
    EXPECT_EQ(r.status, "pass") << id << ": " << r.detail;
  }
}

TEST(VerifyRow, WrongClosedFormIsCaught) {
  TableRow row = dataset_row("table1/row9");
  row.rank = "p";
  const ParamMap p = pm({{"n", 3}, {"p", 1}});
  EXPECT_NO_THROW(verify_rank_formula(row, p));
  row.rank = "n";
  EXPECT_THROW(verify_rank_formula(row, p), RankMismatch);
  const RowReport r = verify_row(row, p);
  EXPECT_EQ(r.status, "fail");
}

TEST(VerifyRow, ExceptionalRowsAreDataOnly) {
  const TableRow row = dataset_row("table1/row10");
  EXPECT_FALSE(row.implementable);
  const RowReport r = data_only_report(row);
  EXPECT_EQ(r.status, "data-only");
  EXPECT_THROW(catalog_triple(row, {}), UnsupportedRow);
}

// property: the holomorphy split and the triple hypotheses over every implementable row, small sizes
TEST(AnalysisProperties, SmallSweepAllRows) {
  int checked = 0;
  for (const auto& row : load_dataset(default_dataset_path())) {
    if (!row.implementable) continue;
    for (const auto& p : parameter_sweep(row, 4)) {
      const RowReport r = verify_row(row, p);
      EXPECT_EQ(r.status, "pass") << row.id() << " " << format_params(p) << ": " << r.detail;
      if (row.table == 2) EXPECT_EQ(r.holomorphy, "anti-holomorphic") << row.id();
      else EXPECT_EQ(r.holomorphy, "holomorphic") << row.id();
      ++checked;
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(Triple, SigmaMustReverseZ) {
  const InvolutionTriple t = catalog_triple(dataset_row("table3/su"), pm({{"p", 1}, {"q", 1}}));
  EXPECT_TRUE(verify_triple(t).pass());
  // sigma = identity fixes Z
  const TripleReport bad = verify_triple(*t.g, t.tau, t.theta, identity_map(t.g), t.z.coords);
  EXPECT_FALSE(bad.anti_holomorphic);
  EXPECT_FALSE(bad.pass());
}

TEST(Triple, SliceSubspaceIsInsideTheTripleIntersection) {
  const InvolutionTriple t = catalog_triple(dataset_row("table1/row8"), pm({{"n", 2}, {"p", 1}}));
  const RealSpan a = slice_subspace(*t.g, t.tau, t.theta, t.sigma);
  EXPECT_EQ(a.dim(), 2);
  const RealSpan triple = multi_fixed(*t.g, {{&t.theta, -1}, {&t.sigma, 1}, {&t.tau, -1}});
  EXPECT_TRUE(triple.contains(a));
  EXPECT_TRUE(is_abelian(*t.g, a));
}

TEST(Diagonal, BothVariantsSatisfyTheHypotheses) {
  const Realization base = build("su", {1, 1});
  const auto conj = InvolutionRecipe::make(identity(2), true);
  for (auto v : {DiagonalVariant::SameComplex, DiagonalVariant::ConjugateComplex}) {
    const InvolutionTriple t = diagonal_setup(base, conj, v);
    EXPECT_EQ(t.g->dim(), 6);
    const TripleReport r = verify_triple(t);
    EXPECT_TRUE(r.pass()) << r.witness;
    EXPECT_EQ(r.rank_pair, 1);
    EXPECT_TRUE(is_characteristic(*t.g, t.theta, t.z.coords));
  }
  EXPECT_EQ(direct_sum(build("sp_R", {2})).g->dim(), 20);
}

TEST(Compact, GrassmannianPairConditions) {
  const Realization base = build("su_compact", {2});
  const auto gr = InvolutionRecipe::make(diagonal({1, -1}));
  const CompactDiagonal cd = compact_diag_setup(base, gr, gr, InvolutionRecipe::make(identity(2), true));
  EXPECT_TRUE(cd.report.pass());
  EXPECT_EQ(cd.report.rank, 1);
}

struct TypeIIDims {
  int fixed, pair, slice;
};

// dims from the displayed parameterizations, p', q' in {1, 2}
TEST(Compact, TypeTwoDimensions) {
  for (int p = 1; p <= 2; ++p)
    for (int q = 1; q <= 2; ++q) {
      for (auto variant : {TypeII::One, TypeII::Two}) {
        const TypeIIData d = compact_typeII_data(variant, p, q);
        const auto& g = *d.g;
        const TypeIIDims want = variant == TypeII::One
                                    ? TypeIIDims{p * (2 * p + 1) + q * (2 * q + 1) + 1, 4 * p * q, 2 * p * q}
                                    : TypeIIDims{p * p + q * q, 2 * p * q, p * q};
        EXPECT_EQ(multi_fixed(g, {{&d.tau, 1}, {&d.theta, 1}}).dim(), want.fixed) << p << q;
        const RealSpan pair = multi_fixed(g, {{&d.tau, -1}, {&d.theta, -1}});
        EXPECT_EQ(pair.dim(), want.pair) << p << q;
        EXPECT_EQ(multi_fixed(g, {{&d.sigma, 1}, {&d.tau, -1}, {&d.theta, -1}}).dim(), want.slice) << p << q;
        // tau and theta stabilize g', commute there, and g' carries all of g^{-tau,-theta}
        EXPECT_TRUE(commute(d.tau_prime, d.theta_prime));
        EXPECT_FALSE(commute(d.tau, d.theta));
        const RealSpan pair_prime =
            multi_fixed(*d.g_prime, {{&d.tau_prime, -1}, {&d.theta_prime, -1}});
        EXPECT_EQ(from_ambient(g, to_ambient(*d.g_prime, pair_prime)), pair) << p << q;
        // sigma commutes with both and reverses Z
        EXPECT_TRUE(commute(d.sigma, d.tau));
        EXPECT_TRUE(commute(d.sigma, d.theta));
        EXPECT_EQ(d.sigma(d.z.coords), QVector(-d.z.coords));
      }
    }
}

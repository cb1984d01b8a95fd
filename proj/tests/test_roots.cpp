#include "vis/actions.hpp"
#include "vis/labels.hpp"
#include "vis/report.hpp"
#include "vis/roots.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace vis;

namespace {

RootDatum split_datum(const Realization& r) {
  return root_decomposition(r.g, rational_torus(*r.g, fixed_subspace(*r.g, r.theta, -1)));
}

std::vector<int> root_dims(const RootDatum& d) {
  std::vector<int> out;
  for (const auto& s : d.root_spaces) out.push_back(s.dim());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Roots, SpR2IsC2) {
  const RootDatum d = split_datum(build("sp_R", {2}));
  EXPECT_EQ(d.rank(), 2);
  EXPECT_EQ(d.roots.size(), 8u);
  EXPECT_EQ(root_dims(d), std::vector<int>(8, 1));
  EXPECT_EQ(d.zero_space.dim(), 2);
  EXPECT_TRUE(d.cartan_integral);
  EXPECT_EQ(d.lattice_rank(), 2);
}

TEST(Roots, Su21IsBC1) {
  const RootDatum d = split_datum(build("su", {2, 1}));
  EXPECT_EQ(d.rank(), 1);
  EXPECT_EQ(root_dims(d), (std::vector<int>{1, 1, 2, 2}));
  EXPECT_EQ(d.zero_space.dim(), 2);
  // +-l and +-2l
  std::set<Rational> values;
  for (const auto& r : d.roots) values.insert(r(0));
  ASSERT_EQ(values.size(), 4u);
  const Rational top = *values.rbegin();
  EXPECT_EQ(values, (std::set<Rational>{-top, Rational(-top / 2), Rational(top / 2), top}));
}

// property: root spaces and the zero space fill g, brackets land in the sum of the roots
TEST(RootProperties, GradingIsConsistent) {
  for (const auto& [fam, params] : std::vector<std::pair<std::string, std::vector<int>>>{
           {"sp_R", {2}}, {"su", {2, 1}}, {"su", {2, 2}}, {"so_star", {6}}, {"so2", {3}}, {"sl_R", {3}}}) {
    const Realization r = build(fam, params);
    const RootDatum d = split_datum(r);
    int total = d.zero_space.dim();
    for (const auto& s : d.root_spaces) total += s.dim();
    EXPECT_EQ(total, r.g->dim()) << fam;
    for (std::size_t i = 0; i < d.roots.size(); ++i) {
      // -l is a root
      EXPECT_TRUE(d.index_of(QVector(-d.roots[i])).has_value()) << fam;
      for (std::size_t j = 0; j < d.roots.size(); ++j) {
        const RealSpan br = bracket_span(*r.g, d.root_spaces[i], d.root_spaces[j]);
        if (br.dim() == 0) continue;
        const QVector sum = d.roots[i] + d.roots[j];
        const auto k = d.index_of(sum);
        if (k) EXPECT_TRUE(d.root_spaces[*k].contains(br)) << fam;
        else EXPECT_TRUE(d.zero_space.contains(br)) << fam;
      }
    }
  }
}

TEST(Roots, NonAbelianTorusRejected) {
  const Realization r = build("sl_R", {2});
  EXPECT_THROW(root_decomposition(r.g, whole(*r.g)), ConditionFailed);
}

TEST(Signatures, CountsAndMultiplicativity) {
  for (const auto& [fam, params] : std::vector<std::pair<std::string, std::vector<int>>>{
           {"sp_R", {2}}, {"su", {2, 1}}, {"sl_R", {3}}, {"so2", {3}}}) {
    const RootDatum d = split_datum(build(fam, params));
    const auto sigs = signatures(d);
    EXPECT_EQ(sigs.size(), std::size_t{1} << d.lattice_rank()) << fam;
    EXPECT_TRUE(sigs.front().trivial());
    EXPECT_EQ(sigs.front().to_string(), std::string(d.lattice_rank(), '+'));
    std::set<std::vector<int>> distinct;
    for (const auto& s : sigs) {
      EXPECT_TRUE(is_multiplicative(d, s)) << fam << " " << s.to_string();
      distinct.insert(s.values);
    }
    // characters of the root lattice are determined by their values on the roots
    EXPECT_EQ(distinct.size(), sigs.size()) << fam;
  }
}

TEST(Signatures, NonMultiplicativeIsDetected) {
  const RootDatum d = split_datum(build("sp_R", {2}));
  Signature s = signatures(d)[1];
  s.values[0] = -s.values[0];
  EXPECT_FALSE(is_multiplicative(d, s));
}

TEST(TauEpsilon, Sl2CompactToSplit) {
  const Realization r = build("sl_R", {2});
  const RootDatum d = root_decomposition(r.g, family_torus(*r.g, r.theta, r.theta, nullptr));
  const auto sigs = signatures(d);
  ASSERT_EQ(sigs.size(), 2u);
  const LinearAlgebraMap plus = tau_epsilon(r.theta, sigs[0], d, true);
  const LinearAlgebraMap minus = tau_epsilon(r.theta, sigs[1], d, true);
  EXPECT_EQ(plus.action, r.theta.action);
  EXPECT_EQ(fingerprint(*r.g, fixed_subspace(*r.g, plus, 1), r.theta), label_fingerprint("so(2)", {}));
  EXPECT_EQ(fingerprint(*r.g, fixed_subspace(*r.g, minus, 1), r.theta), label_fingerprint("so(1,1)", {}));
}

TEST(TauEpsilon, TauMustNegateTheTorus) {
  const Realization r = build("sl_R", {2});
  const RootDatum d = root_decomposition(r.g, family_torus(*r.g, r.theta, r.theta, nullptr));
  EXPECT_THROW(tau_epsilon(identity_map(r.g), signatures(d)[1], d), ConditionFailed);
}

// the grading-table automorphism test and the all-pairs bracket test agree
TEST(TauEpsilon, GradingCheckMatchesFullBracketCheck) {
  for (const auto& [fam, params] : std::vector<std::pair<std::string, std::vector<int>>>{
           {"sp_R", {2}}, {"su", {2, 1}}, {"sl_R", {3}}}) {
    const Realization r = build(fam, params);
    const RootDatum d = root_decomposition(r.g, family_torus(*r.g, r.theta, r.theta, nullptr));
    for (const auto& s : signatures(d)) {
      const LinearAlgebraMap fast = tau_epsilon(r.theta, s, d, false);
      const LinearAlgebraMap full = tau_epsilon(r.theta, s, d, true);
      EXPECT_EQ(fast.action, full.action);
      EXPECT_TRUE(is_automorphism(fast));
    }
  }
}

TEST(EpsilonFamily, Sl3GivesSo3AndSo21) {
  const EpsilonListing l = epsilon_listing("slR:3");
  EXPECT_EQ(l.entries.size(), 4u);
  std::set<std::string> labels(l.labels.begin(), l.labels.end());
  EXPECT_EQ(labels, (std::set<std::string>{"so(3)", "so(2,1)"}));
  EXPECT_EQ(l.labels[0], "so(3)");
  for (const auto& e : l.entries) EXPECT_TRUE(e.report.pass()) << e.report.detail;
}

TEST(EpsilonFamily, RankZeroTorusGivesOneTrivialEntry) {
  const EpsilonListing l = epsilon_listing("compact:su:3");
  EXPECT_EQ(l.torus_rank, 0);
  ASSERT_EQ(l.entries.size(), 1u);
  EXPECT_TRUE(l.entries[0].eps.trivial());
  EXPECT_EQ(l.entries[0].report.signature, "e");
}

TEST(EpsilonFamily, Su22RowThreeSweep) {
  const TableRow row = dataset_row("table1/row3");
  const InvolutionTriple t = catalog_triple(row, {{"n", 2}});
  const RealSpan torus = family_torus(*t.g, t.tau, t.theta, &t.sigma);
  const RootDatum d = root_decomposition(t.g, torus);
  const auto family = epsilon_family(t.tau, t.theta, &t.sigma, true);
  EXPECT_EQ(family.size(), std::size_t{1} << d.lattice_rank());
  for (const auto& e : family) EXPECT_TRUE(e.report.pass()) << e.report.signature << ": " << e.report.detail;
  // the trivial twist gives back g^tau = sp(2,R)
  EXPECT_EQ(family.front().report.fixed, label_fingerprint("sp(n,R)", {{"n", 2}}));
}

TEST(EpsilonFamily, UnknownFamilies) {
  EXPECT_THROW(epsilon_listing("e6:x"), UnsupportedFamily);
  EXPECT_THROW(epsilon_listing("slR:zero"), UnsupportedFamily);
  EXPECT_THROW(epsilon_listing("row:table1/row99"), DatasetError);
}

// property: small Table 1 points keep the hypotheses under every twist
TEST(RootProperties, TwistsPreserveTheHypotheses) {
  for (const auto& row : load_dataset(default_dataset_path())) {
    if (row.table != 1 || !row.implementable) continue;
    for (const auto& p : parameter_sweep(row, 4)) {
      const InvolutionTriple t = catalog_triple(row, p, false);
      for (const auto& e : epsilon_family(t.tau, t.theta, &t.sigma))
        EXPECT_TRUE(e.report.pass()) << row.id() << " " << format_params(p) << " " << e.report.signature;
    }
  }
}

TEST(PositiveSystem, SpR2Nilradical) {
  const RootDatum d = split_datum(build("sp_R", {2}));
  const auto pos = positive_system(d);
  EXPECT_EQ(pos.size(), 4u);
  for (int i : pos) EXPECT_FALSE(std::find(pos.begin(), pos.end(), *d.index_of(QVector(-d.roots[i]))) != pos.end());
  const NilpotentPart n = nilpotent_part(d, pos);
  EXPECT_EQ(n.space.dim(), 4);
  EXPECT_TRUE(is_subalgebra(*d.g, n.space));
  EXPECT_GE(n.central_series_length, 2);
}

TEST(PositiveSystem, FunctionalChoices) {
  const RootDatum d = split_datum(build("sp_R", {2}));
  QVector f(2);
  f << 3, 1;
  const auto pos = positive_system(d, f);
  EXPECT_EQ(pos.size(), 4u);
  for (int i : pos) EXPECT_GT(d.roots[i].dot(f), 0);
  // a functional orthogonal to some root
  const QVector r0 = d.roots[0];
  QVector perp(2);
  perp << -r0(1), r0(0);
  EXPECT_THROW(positive_system(d, perp), DegenerateFunctional);
}

TEST(PositiveSystem, StabilizesChecksSubspaces) {
  const Realization r = build("sl_R", {2});
  const RootDatum d = split_datum(r);
  const NilpotentPart n = nilpotent_part(d, positive_system(d));
  EXPECT_FALSE(stabilizes(r.theta, n.space));
  EXPECT_TRUE(stabilizes(identity_map(r.g), n.space));
}

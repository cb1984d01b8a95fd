#include "vis/actions.hpp"
#include "vis/numeric.hpp"
#include "vis/report.hpp"

#include <gtest/gtest.h>

using namespace vis;

namespace {

NumericSettings quick(int samples = 10) {
  NumericSettings s;
  s.samples = samples;
  return s;
}

GroupElement random_group(int m, std::mt19937_64& rng, const ActionModel& model) {
  std::normal_distribution<double> n(0.0, 0.7);
  CMat x = CMat::Zero(m, m);
  for (const auto& b : model.p_basis) x += n(rng) * to_complex(b);
  for (const auto& f : model.h_factors)
    for (const auto& b : f) x += n(rng) * to_complex(b);
  return GroupElement::exp(x);
}

}  // namespace

TEST(Group, ExpKeepsItsInverse) {
  CMat x(2, 2);
  x << 0.3, 1.2, -0.4, -0.3;
  const GroupElement g = GroupElement::exp(x);
  EXPECT_LT((g.g * g.inv - CMat::Identity(2, 2)).norm(), 1e-12);
  const GroupElement h = g * g.inverse();
  EXPECT_LT((h.g - CMat::Identity(2, 2)).norm(), 1e-12);
}

TEST(Group, CosetPointOfKIsTheOrigin) {
  const ActionModel m = build_action("sl2R:K");
  const Certifier c(m, quick());
  for (const auto& gen : m.h_factors.front()) {
    const GroupElement k = GroupElement::exp(0.9 * to_complex(gen));
    EXPECT_LT((c.point(k) - CMat::Identity(2, 2)).norm(), 1e-12);
  }
  EXPECT_LT((c.point(GroupElement::identity(2)) - CMat::Identity(2, 2)).norm(), 1e-15);
}

TEST(Rng, StreamsAreDeterministicAndDistinct) {
  auto a = item_rng(7, 3), b = item_rng(7, 3), c = item_rng(7, 4), d = item_rng(7, 3, 1);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
}

TEST(Actions, RegistryBuildsWithExactEvidence) {
  EXPECT_EQ(action_registry().size(), 13u);
  for (const auto& spec : action_registry()) {
    const ActionModel m = build_action(spec.id);
    EXPECT_TRUE(m.conditions) << spec.id << " " << m.detail;
    EXPECT_TRUE(m.anti_holomorphic) << spec.id;
    EXPECT_TRUE(m.sigma_fixes_torus) << spec.id;
    EXPECT_FALSE(m.torus.empty()) << spec.id;
    EXPECT_EQ(m.compact, spec.kind == "compact") << spec.id;
  }
  EXPECT_EQ(build_action("su6:Sp3").h_dim(), 21);
  EXPECT_EQ(build_action("sl2R:N").h_dim(), 1);
  EXPECT_THROW(build_action("e6:anything"), UnsupportedFamily);
  EXPECT_THROW(build_action("sl2R:B"), UnsupportedFamily);
}

TEST(Antiholomorphy, ExactCases) {
  const Realization r = build("sl_R", {2});
  const auto z = characteristic_element(r);
  const auto flip = map_from_recipe(r.g, InvolutionRecipe::make(diagonal({1, -1})), "flip");
  EXPECT_TRUE(antiholomorphy_exact(*r.g, r.theta, flip, z.coords));
  EXPECT_FALSE(antiholomorphy_exact(*r.g, r.theta, identity_map(r.g), z.coords));
  // theta commutes with ad(Z) on p
  EXPECT_FALSE(antiholomorphy_exact(*r.g, r.theta, r.theta, z.coords));
}

TEST(Orbit, SameOrbitHasZeroResidual) {
  const ActionModel m = build_action("sp2R:U11");
  const Certifier c(m, quick());
  std::mt19937_64 rng(1);
  for (int t = 0; t < 5; ++t) {
    const GroupElement x = c.sample_point(rng);
    Eigen::VectorXd s = Eigen::VectorXd::Random(c.h_dim()) * 0.8;
    const GroupElement y = c.h_of(s) * x;
    const Fit f = c.orbit(x, y, GroupElement::identity(4), rng);
    EXPECT_LT(f.residual, 1e-9);
  }
}

TEST(Orbit, DifferentOrbitsStayApart) {
  // K-orbits in the disc are circles; distinct radii are separated
  const ActionModel m = build_action("sl2R:K");
  const Certifier c(m, quick());
  std::mt19937_64 rng(2);
  Eigen::VectorXd t1(1), t2(1);
  t1 << 0.3;
  t2 << 0.8;
  const Fit f = c.orbit(c.a_of(t1), c.a_of(t2), GroupElement::identity(2), rng);
  EXPECT_GT(f.residual, 1e-2);
}

TEST(Slice, FitRecoversPlantedPoints) {
  const PlantedStats st = planted_recovery(build_action("sl2R:A"), quick(), 50);
  EXPECT_EQ(st.recovered, 50);
  EXPECT_LT(st.worst, 1e-8);
}

TEST(Iwasawa, RoundTripAndIdentity) {
  const ActionModel m = build_action("sl2R:N");
  const Certifier c(m, quick());
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const GroupElement g = random_group(2, rng, m);
    const Iwasawa w = iwasawa(c, g, rng);
    EXPECT_LT(w.residual, 1e-10);
    EXPECT_LT((w.n.g * w.a.g * w.k.g - g.g).norm(), 1e-10);
  }
  const Iwasawa id = iwasawa(c, GroupElement::identity(2), rng);
  EXPECT_LT((id.n.g - CMat::Identity(2, 2)).norm(), 1e-10);
  EXPECT_LT((id.a.g - CMat::Identity(2, 2)).norm(), 1e-10);
  EXPECT_LT((id.k.g - CMat::Identity(2, 2)).norm(), 1e-10);
}

TEST(Certificate, PassesAndIsDeterministic) {
  const ActionModel m = build_action("sp2R:GL2R");
  NumericSettings s = quick(15);
  s.seed = 7;
  const Certificate a = certify(m, s), b = certify(m, s);
  EXPECT_TRUE(a.pass());
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_EQ(a.sigma_fixes_slice, 0.0);
  const auto j = to_json(a);
  EXPECT_EQ(j["schema"], "visibility-certificate/1");
  for (const char* k : {"slice_meets_orbit", "sigma_fixes_slice", "sigma_preserves_orbits", "j_transversality"})
    EXPECT_TRUE(j["residuals"].contains(k)) << k;
}

// property: a bigger restart budget never raises a residual
TEST(Certificate, MonotoneInRestarts) {
  for (const char* id : {"sl2R:A", "sp2R:U11", "su2:SO2"}) {
    const ActionModel m = build_action(id);
    Certificate prev;
    for (int r : {1, 3, 8}) {
      NumericSettings s = quick(12);
      s.restarts = r;
      const Certificate c = certify(m, s);
      if (r > 1) {
        EXPECT_LE(c.slice_meets_orbit, prev.slice_meets_orbit) << id;
        EXPECT_LE(c.sigma_preserves_orbits, prev.sigma_preserves_orbits) << id;
        EXPECT_LE(c.inconclusive_samples, prev.inconclusive_samples) << id;
      }
      prev = c;
    }
  }
}

// residuals above tolerance read as inconclusive, never as failure
TEST(Certificate, TightToleranceIsInconclusive) {
  NumericSettings s = quick(5);
  s.tol = 1e-30;
  const Certificate c = certify(build_action("sl2R:K"), s);
  EXPECT_EQ(c.status, "inconclusive");
  EXPECT_GT(c.inconclusive_samples, 0);
  EXPECT_NE(certificate_markdown(c).find("inconclusive"), std::string::npos);
}

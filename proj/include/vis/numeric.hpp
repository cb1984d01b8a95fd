#pragma once

#include "vis/analysis.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace vis {

using CMat = Eigen::MatrixXcd;

CMat to_complex(const ExactMatrix& m);

// Group element kept with its inverse so twisted maps never invert numerically.
struct GroupElement {
  CMat g, inv;
  static GroupElement identity(int m);
  static GroupElement exp(const CMat& x);
  GroupElement operator*(const GroupElement& o) const { return {g * o.g, o.inv * inv}; }
  GroupElement inverse() const { return {inv, g}; }
};

// Float lift of an involution recipe.
class GroupInvolution {
public:
  GroupInvolution() = default;
  explicit GroupInvolution(const InvolutionRecipe& r);
  GroupElement group(const GroupElement& x) const;
  CMat algebra(const CMat& x) const;

private:
  CMat a_, a_inv_;
  bool conj_ = false, neg_transpose_ = false;
  int sign_ = 1;
};

// Point of G/K as P(g) = g theta(g)^-1.
CMat coset_point(const GroupElement& x, const GroupInvolution& theta);

// Everything the certifier needs about one action H on G/K with slice exp(a) o.
struct ActionModel {
  std::string id, group, subgroup, space;
  bool compact = false;
  InvolutionRecipe theta, sigma;
  // H is the product of exp(span(factor)) over the factors, in order.
  std::vector<std::vector<ExactMatrix>> h_factors;
  std::vector<ExactMatrix> torus;    // slice generators
  std::vector<ExactMatrix> p_basis;  // -1 eigenspace of theta, used for sampling
  ExactMatrix z;
  // exact evidence collected when the model is built
  bool conditions = false;
  bool anti_holomorphic = false;
  bool sigma_fixes_torus = false;
  std::string detail;

  int h_dim() const;
};

// H = identity component of G^tau, slice from g^{-theta,sigma,-tau}.
ActionModel symmetric_model(std::string id, const InvolutionTriple& t);
// H = N from the positive root spaces of a maximal abelian a in g^{sigma,-theta}.
ActionModel unipotent_model(std::string id, const AlgebraPtr& g, const LinearAlgebraMap& theta,
                            const LinearAlgebraMap& sigma, const CharacteristicElement& z);
// Compact quotient G_U/K with H_U = identity component of G_U^tau and a given torus.
ActionModel compact_model(std::string id, const AlgebraPtr& g, const LinearAlgebraMap& tau,
                          const LinearAlgebraMap& theta, const LinearAlgebraMap& sigma, const RealSpan& torus,
                          const CharacteristicElement& z);

// sigma o ad(Z) = -ad(Z) o sigma on g^{-theta}, exactly.
bool antiholomorphy_exact(const RealFormAlgebra& g, const LinearAlgebraMap& theta, const LinearAlgebraMap& sigma,
                          const QVector& z);

struct NumericSettings {
  double tol = 1e-6;
  int samples = 100;
  int restarts = 32;
  std::uint64_t seed = 0;
  double scale = 0.6;  // std-dev of the p-coordinates of sample points
  int max_h_dim = 24;
};

// Independent stream for work item `index` under `master`.
std::mt19937_64 item_rng(std::uint64_t master, std::uint64_t index, std::uint64_t stream = 0);

struct Fit {
  double residual = 0;
  Eigen::VectorXd x;  // h-parameters then torus parameters
  int restarts_used = 0;
};

class Certifier {
public:
  Certifier(const ActionModel& model, NumericSettings settings);

  GroupElement h_of(const Eigen::VectorXd& s) const;
  GroupElement a_of(const Eigen::VectorXd& t) const;
  GroupElement sample_point(std::mt19937_64& rng) const;
  CMat point(const GroupElement& x) const { return coset_point(x, theta_); }
  const GroupInvolution& sigma() const { return sigma_; }
  const GroupInvolution& theta() const { return theta_; }
  int h_dim() const { return static_cast<int>(h_gens_.size()); }
  int torus_dim() const { return static_cast<int>(a_gens_.size()); }

  // min over (h, a) of |P(h a) - P(x)|.
  Fit fit_slice(const GroupElement& x, std::mt19937_64& rng) const;
  // min over h of |P(h seed x) - P(y)|; restart 0 starts at h = 1.
  Fit orbit(const GroupElement& x, const GroupElement& y, const GroupElement& seed, std::mt19937_64& rng) const;
  // Distance of J(T S) from T(H x) at the slice point exp(t) o, both pulled back to o.
  double transversality(const Eigen::VectorXd& t) const;

  int restarts() const { return settings_.restarts; }

private:
  const ActionModel& model_;
  NumericSettings settings_;
  int m_ = 0;
  GroupInvolution theta_, sigma_;
  std::vector<std::vector<CMat>> factor_gens_;
  std::vector<CMat> h_gens_, a_gens_, p_gens_;
  CMat z_;

  Fit minimize(int inputs, const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& f,
               const std::function<Eigen::VectorXd(int)>& start, double stop) const;
};

struct Certificate {
  std::string action, group, subgroup, space;
  std::uint64_t seed = 0;
  double tol = 0;
  int samples = 0, restarts = 0;
  double slice_meets_orbit = 0, sigma_fixes_slice = 0, sigma_preserves_orbits = 0, j_transversality = 0;
  int inconclusive_samples = 0;
  bool exact_conditions = false, exact_anti_holomorphic = false, exact_sigma_fixes_torus = false;
  std::string status;  // pass | inconclusive
  bool pass() const { return status == "pass"; }
};

Certificate certify(const ActionModel& model, const NumericSettings& settings);
nlohmann::json to_json(const Certificate& c);

// Planted points h a o: fraction of trials recovered below `threshold`.
struct PlantedStats {
  int trials = 0, recovered = 0;
  double worst = 0;
};
PlantedStats planted_recovery(const ActionModel& model, const NumericSettings& settings, int trials,
                              double threshold = 1e-8);

// g = n a k for a unipotent model. Residual max(|nak - g|, |theta(k) - k|).
struct Iwasawa {
  GroupElement n, a, k;
  double residual = 0;
};
Iwasawa iwasawa(const Certifier& unipotent, const GroupElement& g, std::mt19937_64& rng, double tol = 1e-10);

} // namespace vis

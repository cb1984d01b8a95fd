#include "vis/numeric.hpp"

#include "vis/roots.hpp"

#include <unsupported/Eigen/LevenbergMarquardt>
#include <unsupported/Eigen/MatrixFunctions>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace vis {

CMat to_complex(const ExactMatrix& m) {
  CMat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = {m(i, j).re.get_d(), m(i, j).im.get_d()};
  return out;
}

GroupElement GroupElement::identity(int m) { return {CMat::Identity(m, m), CMat::Identity(m, m)}; }

GroupElement GroupElement::exp(const CMat& x) {
  const CMat neg = -x;
  return {x.exp(), neg.exp()};
}

GroupInvolution::GroupInvolution(const InvolutionRecipe& r)
    : a_(to_complex(r.conjugator)), a_inv_(to_complex(r.conjugator_inverse)), conj_(r.conj),
      neg_transpose_(r.neg_transpose), sign_(r.sign) {}

GroupElement GroupInvolution::group(const GroupElement& x) const {
  if (sign_ != 1) throw std::logic_error("recipe with sign -1 has no group lift");
  CMat g = conj_ ? CMat(x.g.conjugate()) : x.g;
  CMat gi = conj_ ? CMat(x.inv.conjugate()) : x.inv;
  if (neg_transpose_) {
    CMat t = gi.transpose();
    gi = g.transpose();
    g = std::move(t);
  }
  return {a_ * g * a_inv_, a_ * gi * a_inv_};
}

CMat GroupInvolution::algebra(const CMat& x) const {
  CMat y = conj_ ? CMat(x.conjugate()) : x;
  if (neg_transpose_) y = CMat(-y.transpose());
  return double(sign_) * (a_ * y * a_inv_);
}

CMat coset_point(const GroupElement& x, const GroupInvolution& theta) { return x.g * theta.group(x).inv; }

int ActionModel::h_dim() const {
  int n = 0;
  for (const auto& f : h_factors) n += static_cast<int>(f.size());
  return n;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<ExactMatrix> matrices(const RealFormAlgebra& g, const RealSpan& s) {
  std::vector<ExactMatrix> out;
  for (int i = 0; i < s.dim(); ++i) out.push_back(g.element(s.vector(i)));
  return out;
}

const InvolutionRecipe& recipe_of(const LinearAlgebraMap& m) {
  if (!m.recipe) throw ConditionFailed(m.name + " has no group-level recipe");
  return *m.recipe;
}

bool torus_fixed(const LinearAlgebraMap& sigma, const RealSpan& a) {
  for (int i = 0; i < a.dim(); ++i)
    if (sigma(a.vector(i)) != a.vector(i)) return false;
  return true;
}

} // namespace

bool antiholomorphy_exact(const RealFormAlgebra& g, const LinearAlgebraMap& theta, const LinearAlgebraMap& sigma,
                          const QVector& z) {
  const RealSpan p = fixed_subspace(g, theta, -1);
  for (int i = 0; i < p.dim(); ++i) {
    const QVector x = p.vector(i);
    if (sigma(g.bracket(z, x)) != QVector(-g.bracket(z, sigma(x)))) return false;
  }
  return true;
}

ActionModel symmetric_model(std::string id, const InvolutionTriple& t) {
  const RealFormAlgebra& g = *t.g;
  ActionModel m;
  m.id = std::move(id);
  m.theta = recipe_of(t.theta);
  m.sigma = recipe_of(t.sigma);
  const TripleReport rep = verify_triple(t);
  m.conditions = rep.pass();
  m.detail = rep.witness;
  const RealSpan hk = multi_fixed(g, {{&t.tau, 1}, {&t.theta, 1}});
  const RealSpan hp = multi_fixed(g, {{&t.tau, 1}, {&t.theta, -1}});
  for (const auto& s : {hk, hp})
    if (s.dim() > 0) m.h_factors.push_back(matrices(g, s));
  const RealSpan a = slice_subspace(g, t.tau, t.theta, t.sigma);
  m.torus = matrices(g, a);
  m.p_basis = matrices(g, fixed_subspace(g, t.theta, -1));
  m.z = t.z.matrix;
  m.anti_holomorphic = antiholomorphy_exact(g, t.theta, t.sigma, t.z.coords);
  m.sigma_fixes_torus = torus_fixed(t.sigma, a);
  return m;
}

ActionModel unipotent_model(std::string id, const AlgebraPtr& gp, const LinearAlgebraMap& theta,
                            const LinearAlgebraMap& sigma, const CharacteristicElement& z) {
  const RealFormAlgebra& g = *gp;
  ActionModel m;
  m.id = std::move(id);
  m.theta = recipe_of(theta);
  m.sigma = recipe_of(sigma);
  const RealSpan p = fixed_subspace(g, theta, -1);
  const RealSpan a = rational_torus(g, multi_fixed(g, {{&sigma, 1}, {&theta, -1}}));
  const RootDatum d = root_decomposition(gp, a);
  const NilpotentPart n = nilpotent_part(d, positive_system(d));
  const bool maximal = is_maximal_abelian_in(g, a, p);
  const bool stable = stabilizes(sigma, n.space);
  m.conditions = maximal && stable && commute(sigma, theta);
  if (!maximal) m.detail += "torus is not maximal abelian in p; ";
  if (!stable) m.detail += "sigma does not stabilize n; ";
  m.h_factors.push_back(matrices(g, n.space));
  m.torus = matrices(g, a);
  m.p_basis = matrices(g, p);
  m.z = z.matrix;
  m.anti_holomorphic = antiholomorphy_exact(g, theta, sigma, z.coords);
  m.sigma_fixes_torus = torus_fixed(sigma, a);
  return m;
}

ActionModel compact_model(std::string id, const AlgebraPtr& gp, const LinearAlgebraMap& tau,
                          const LinearAlgebraMap& theta, const LinearAlgebraMap& sigma, const RealSpan& torus,
                          const CharacteristicElement& z) {
  const RealFormAlgebra& g = *gp;
  ActionModel m;
  m.id = std::move(id);
  m.compact = true;
  m.theta = recipe_of(theta);
  m.sigma = recipe_of(sigma);
  const RealSpan slice = multi_fixed(g, {{&sigma, 1}, {&tau, -1}, {&theta, -1}});
  const bool inside = slice.contains(torus) && is_abelian(g, torus);
  const bool comm = commute(sigma, tau) && commute(sigma, theta);
  m.anti_holomorphic = antiholomorphy_exact(g, theta, sigma, z.coords);
  m.conditions = inside && comm && m.anti_holomorphic;
  if (!inside) m.detail += "torus is not an abelian subspace of g^{sigma,-tau,-theta}; ";
  if (!comm) m.detail += "sigma does not commute with tau and theta; ";
  m.h_factors.push_back(matrices(g, fixed_subspace(g, tau, 1)));
  m.torus = matrices(g, torus);
  m.p_basis = matrices(g, fixed_subspace(g, theta, -1));
  m.z = z.matrix;
  m.sigma_fixes_torus = torus_fixed(sigma, torus);
  return m;
}

// ---------------------------------------------------------------------------

std::mt19937_64 item_rng(std::uint64_t master, std::uint64_t index, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

namespace {

struct Residual : Eigen::DenseFunctor<double> {
  std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> f;
  Residual(int inputs, int values, std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)> fn)
      : Eigen::DenseFunctor<double>(inputs, values), f(std::move(fn)) {}
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fv) const {
    f(x, fv);
    return 0;
  }
};

void flatten_into(const CMat& d, Eigen::VectorXd& out) {
  const Eigen::Index n = d.size();
  out.resize(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out[i] = d.data()[i].real();
    out[n + i] = d.data()[i].imag();
  }
}

Eigen::VectorXd real_vector(const CMat& x) {
  Eigen::VectorXd v;
  flatten_into(x, v);
  return v;
}

Eigen::VectorXd normal_vector(int n, double sd, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, sd);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = nd(rng);
  return v;
}

// Orthonormal basis of the column span, rank cut relative to the largest singular value.
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& a) {
  if (a.cols() == 0) return Eigen::MatrixXd(a.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cut = std::max(1e-12, 1e-9 * (s.size() ? s[0] : 0.0));
  int r = 0;
  while (r < s.size() && s[r] > cut) ++r;
  return svd.matrixU().leftCols(r);
}

} // namespace

Certifier::Certifier(const ActionModel& model, NumericSettings settings)
    : model_(model), settings_(settings), theta_(model.theta), sigma_(model.sigma) {
  if (model.h_dim() > settings.max_h_dim)
    throw ConditionFailed("subgroup dimension " + std::to_string(model.h_dim()) + " above the cap " +
                          std::to_string(settings.max_h_dim));
  m_ = model.theta.ambient_size();
  for (const auto& f : model.h_factors) {
    std::vector<CMat> gens;
    for (const auto& x : f) {
      gens.push_back(to_complex(x));
      h_gens_.push_back(gens.back());
    }
    factor_gens_.push_back(std::move(gens));
  }
  for (const auto& x : model.torus) a_gens_.push_back(to_complex(x));
  for (const auto& x : model.p_basis) p_gens_.push_back(to_complex(x));
  z_ = to_complex(model.z);
}

GroupElement Certifier::h_of(const Eigen::VectorXd& s) const {
  GroupElement out = GroupElement::identity(m_);
  int k = 0;
  for (const auto& gens : factor_gens_) {
    CMat x = CMat::Zero(m_, m_);
    for (const auto& y : gens) x += s[k++] * y;
    out = out * GroupElement::exp(x);
  }
  return out;
}

GroupElement Certifier::a_of(const Eigen::VectorXd& t) const {
  CMat x = CMat::Zero(m_, m_);
  for (int i = 0; i < torus_dim(); ++i) x += t[i] * a_gens_[i];
  return GroupElement::exp(x);
}

GroupElement Certifier::sample_point(std::mt19937_64& rng) const {
  const Eigen::VectorXd c = normal_vector(static_cast<int>(p_gens_.size()), model_.compact ? 1.0 : settings_.scale, rng);
  CMat x = CMat::Zero(m_, m_);
  for (int i = 0; i < c.size(); ++i) x += c[i] * p_gens_[i];
  return GroupElement::exp(x);
}

Fit Certifier::minimize(int inputs, const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& f,
                        const std::function<Eigen::VectorXd(int)>& start, double stop) const {
  Fit best;
  best.residual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd probe;
  f(Eigen::VectorXd::Zero(inputs), probe);
  const int values = static_cast<int>(probe.size());
  for (int r = 0; r < settings_.restarts; ++r) {
    Eigen::VectorXd x = start(r);
    Residual res(inputs, values, f);
    Eigen::NumericalDiff<Residual, Eigen::Central> nd(res);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Residual, Eigen::Central>> lm(nd);
    lm.setXtol(1e-15);
    lm.setFtol(1e-15);
    lm.setGtol(0);
    lm.setMaxfev(150 * (inputs + 1));
    lm.minimize(x);
    Eigen::VectorXd fv;
    f(x, fv);
    const double r2 = fv.norm();
    if (r2 < best.residual) {
      best.residual = r2;
      best.x = x;
    }
    best.restarts_used = r + 1;
    if (best.residual < stop) break;
  }
  return best;
}

Fit Certifier::fit_slice(const GroupElement& x, std::mt19937_64& rng) const {
  const CMat target = point(x);
  const int nh = h_dim(), na = torus_dim();
  auto f = [&](const Eigen::VectorXd& v, Eigen::VectorXd& out) {
    const GroupElement e = h_of(v.head(nh)) * a_of(v.tail(na));
    flatten_into(point(e) - target, out);
  };
  const double sd = model_.compact ? 1.5 : 1.0;
  auto start = [&](int r) -> Eigen::VectorXd {
    if (r == 0) return Eigen::VectorXd::Zero(nh + na);
    return normal_vector(nh + na, sd, rng);
  };
  const double stop = 1e-12 * std::max(1.0, target.norm());
  return minimize(nh + na, f, start, stop);
}

Fit Certifier::orbit(const GroupElement& x, const GroupElement& y, const GroupElement& seed,
                     std::mt19937_64& rng) const {
  const CMat target = point(y);
  const GroupElement base = seed * x;
  const int nh = h_dim();
  auto f = [&](const Eigen::VectorXd& v, Eigen::VectorXd& out) { flatten_into(point(h_of(v) * base) - target, out); };
  const double sd = model_.compact ? 1.5 : 1.0;
  auto start = [&](int r) -> Eigen::VectorXd {
    if (r == 0) return Eigen::VectorXd::Zero(nh);
    return normal_vector(nh, sd, rng);
  };
  const double stop = 1e-12 * std::max(1.0, target.norm());
  return minimize(nh, f, start, stop);
}

double Certifier::transversality(const Eigen::VectorXd& t) const {
  const GroupElement a = a_of(t);
  const int rows = 2 * m_ * m_;
  Eigen::MatrixXd orbit_dirs(rows, h_dim());
  for (int i = 0; i < h_dim(); ++i) {
    const CMat v = a.inv * h_gens_[i] * a.g;
    orbit_dirs.col(i) = real_vector(0.5 * (v - theta_.algebra(v)));
  }
  Eigen::MatrixXd j_dirs(rows, torus_dim());
  for (int i = 0; i < torus_dim(); ++i) j_dirs.col(i) = real_vector(z_ * a_gens_[i] - a_gens_[i] * z_);
  const Eigen::MatrixXd q = range_basis(orbit_dirs);
  const Eigen::MatrixXd u = range_basis(j_dirs);
  if (u.cols() == 0) return 0.0;
  const Eigen::MatrixXd miss = u - q * (q.transpose() * u);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(miss);
  return svd.singularValues()[0];
}

// ---------------------------------------------------------------------------

Certificate certify(const ActionModel& model, const NumericSettings& settings) {
  const Certifier c(model, settings);
  Certificate cert;
  cert.action = model.id;
  cert.group = model.group;
  cert.subgroup = model.subgroup;
  cert.space = model.space;
  cert.seed = settings.seed;
  cert.tol = settings.tol;
  cert.samples = settings.samples;
  cert.restarts = settings.restarts;
  cert.exact_conditions = model.conditions;
  cert.exact_anti_holomorphic = model.anti_holomorphic;
  cert.exact_sigma_fixes_torus = model.sigma_fixes_torus;
  const int nh = c.h_dim();

  for (int i = 0; i < settings.samples; ++i) {
    auto rng = item_rng(settings.seed, static_cast<std::uint64_t>(i));
    const GroupElement x = c.sample_point(rng);

    // restart points on their own streams, so a larger budget only adds restarts
    auto slice_rng = item_rng(settings.seed, static_cast<std::uint64_t>(i), 2);
    auto orbit_rng = item_rng(settings.seed, static_cast<std::uint64_t>(i), 3);
    const Fit slice = c.fit_slice(x, slice_rng);
    const GroupElement h0 = c.h_of(slice.x.head(nh));

    // slice point with rational coordinates: sigma checked on the exact generator
    std::uniform_int_distribution<int> num(-12, 12);
    ExactMatrix gen = ExactMatrix::Zero(model.theta.ambient_size(), model.theta.ambient_size());
    for (int k = 0; k < c.torus_dim(); ++k) {
      const int v = num(rng);
      gen += scaled(model.torus[k], GaussianRational(Rational(v, 8)));
    }
    const ExactMatrix moved = model.sigma.apply(gen);
    const double fix = moved == gen ? 0.0 : (to_complex(moved) - to_complex(gen)).norm();

    const GroupElement y = c.sigma().group(x);
    const GroupElement seed = c.sigma().group(h0) * h0.inverse();
    const Fit orbit = c.orbit(x, y, seed, orbit_rng);

    // generic slice point: the rational lattice above hits singular orbits (t = 0 and walls)
    const double jt = c.transversality(normal_vector(c.torus_dim(), 1.0, rng));

    cert.slice_meets_orbit = std::max(cert.slice_meets_orbit, slice.residual);
    cert.sigma_fixes_slice = std::max(cert.sigma_fixes_slice, fix);
    cert.sigma_preserves_orbits = std::max(cert.sigma_preserves_orbits, orbit.residual);
    cert.j_transversality = std::max(cert.j_transversality, jt);
    if (slice.residual >= settings.tol || fix >= settings.tol || orbit.residual >= settings.tol ||
        jt >= settings.tol)
      ++cert.inconclusive_samples;
  }
  const bool ok = cert.inconclusive_samples == 0 && cert.exact_conditions && cert.exact_anti_holomorphic &&
                  cert.exact_sigma_fixes_torus;
  cert.status = ok ? "pass" : "inconclusive";
  return cert;
}

namespace {

// Three significant digits; keeps certificates byte-stable across runs.
double rounded(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return std::strtod(buf, nullptr);
}

} // namespace

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j;
  j["schema"] = "visibility-certificate/1";
  j["action"] = c.action;
  j["group"] = c.group;
  j["subgroup"] = c.subgroup;
  j["space"] = c.space;
  j["seed"] = c.seed;
  j["tolerance"] = c.tol;
  j["samples"] = c.samples;
  j["restarts"] = c.restarts;
  j["residuals"] = {{"slice_meets_orbit", rounded(c.slice_meets_orbit)},
                    {"sigma_fixes_slice", rounded(c.sigma_fixes_slice)},
                    {"sigma_preserves_orbits", rounded(c.sigma_preserves_orbits)},
                    {"j_transversality", rounded(c.j_transversality)}};
  j["exact"] = {{"conditions", c.exact_conditions},
                {"anti_holomorphic", c.exact_anti_holomorphic},
                {"sigma_fixes_torus", c.exact_sigma_fixes_torus}};
  j["inconclusive_samples"] = c.inconclusive_samples;
  j["status"] = c.status;
  return j;
}

PlantedStats planted_recovery(const ActionModel& model, const NumericSettings& settings, int trials,
                              double threshold) {
  const Certifier c(model, settings);
  PlantedStats st;
  st.trials = trials;
  const double sd = model.compact ? 1.0 : settings.scale;
  for (int i = 0; i < trials; ++i) {
    auto rng = item_rng(settings.seed, static_cast<std::uint64_t>(i), 1);
    const Eigen::VectorXd s = normal_vector(c.h_dim(), sd, rng);
    const Eigen::VectorXd t = normal_vector(c.torus_dim(), sd, rng);
    const GroupElement x = c.h_of(s) * c.a_of(t);
    const Fit fit = c.fit_slice(x, rng);
    if (fit.residual < threshold) ++st.recovered;
    st.worst = std::max(st.worst, fit.residual);
  }
  return st;
}

Iwasawa iwasawa(const Certifier& c, const GroupElement& g, std::mt19937_64& rng, double tol) {
  const Fit fit = c.fit_slice(g, rng);
  Iwasawa out;
  out.n = c.h_of(fit.x.head(c.h_dim()));
  out.a = c.a_of(fit.x.tail(c.torus_dim()));
  out.k = (out.n * out.a).inverse() * g;
  const double assemble = (out.n.g * out.a.g * out.k.g - g.g).norm();
  const double compact = (c.theta().group(out.k).g - out.k.g).norm();
  out.residual = std::max(assemble, compact);
  if (!(out.residual < tol))
    throw IwasawaNonConvergence("Iwasawa residual " + std::to_string(out.residual) + " above " + std::to_string(tol));
  return out;
}

} // namespace vis

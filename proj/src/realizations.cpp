#include "vis/realizations.hpp"
#include "vis/labels.hpp"

#include <numeric>

namespace vis {

ExactMatrix symplectic_unit(int n) {
  ExactMatrix j = ExactMatrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    j(k, n + k) = -1;
    j(n + k, k) = 1;
  }
  return j;
}

ExactMatrix swap_unit(int n) {
  ExactMatrix k = ExactMatrix::Zero(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    k(i, n + i) = 1;
    k(n + i, i) = 1;
  }
  return k;
}

ExactMatrix signs(const std::vector<std::pair<int, int>>& runs) {
  std::vector<int> d;
  for (const auto& [value, count] : runs)
    for (int c = 0; c < count; ++c) d.push_back(value);
  return diagonal(d);
}

AlgebraPtr algebra_from_constraints(int m, const std::vector<LinearConstraint>& constraints,
                                    std::string label) {
  const int unknowns = 2 * m * m;
  std::vector<QVector> columns;
  Eigen::Index rows = 0;
  for (int k = 0; k < unknowns; ++k) {
    const int cell = k % (m * m);
    const GaussianRational unit = k < m * m ? GaussianRational(1) : I_unit();
    const ExactMatrix x = elementary(m, cell / m, cell % m, unit);
    std::vector<QVector> parts;
    Eigen::Index len = 0;
    for (const auto& c : constraints) {
      parts.push_back(flatten(c(x)));
      len += parts.back().size();
    }
    QVector col(len);
    Eigen::Index at = 0;
    for (const auto& p : parts) {
      col.segment(at, p.size()) = p;
      at += p.size();
    }
    rows = len;
    columns.push_back(std::move(col));
  }
  QMatrix system(rows, unknowns);
  for (int k = 0; k < unknowns; ++k) system.col(k) = columns[k];
  const QMatrix kern = kernel(system);
  std::vector<ExactMatrix> basis;
  for (Eigen::Index c = 0; c < kern.cols(); ++c) basis.push_back(unflatten(kern.col(c), m, m));
  if (basis.empty()) throw ParameterOutOfRange(label + " is the zero algebra");
  return make_algebra(basis, std::move(label));
}

namespace {

ExactMatrix trace_of(const ExactMatrix& x) {
  ExactMatrix t(1, 1);
  t(0, 0) = trace(x);
  return t;
}

ExactMatrix plus(const ExactMatrix& a, const ExactMatrix& b) { return a + b; }

// X^T F + F X for a fixed form F.
LinearConstraint preserves_bilinear(const ExactMatrix& f) {
  return [f](const ExactMatrix& x) { return plus(multiply(transpose(x), f), multiply(f, x)); };
}

// X^* F + F X.
LinearConstraint preserves_hermitian(const ExactMatrix& f) {
  return [f](const ExactMatrix& x) { return plus(multiply(adjoint(x), f), multiply(f, x)); };
}

LinearConstraint is_real() {
  return [](const ExactMatrix& x) { return ExactMatrix(x - conjugate(x)); };
}

LinearConstraint traceless() { return [](const ExactMatrix& x) { return trace_of(x); }; }

void need(bool ok, const std::string& what) {
  if (!ok) throw ParameterOutOfRange(what);
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

} // namespace

Realization build(const std::string& family, const std::vector<int>& params, int max_ambient) {
  Realization r;
  r.family = family;
  r.params = params;
  auto arity = [&](std::size_t n) {
    need(params.size() == n, family + " takes " + std::to_string(n) + " parameter(s)");
    for (int v : params) need(v >= 0, family + " parameters must be nonnegative");
  };
  int m = 0;
  std::vector<LinearConstraint> cs;
  std::string label = family + "(" + join(params) + ")";

  if (family == "su") {
    arity(2);
    const int p = params[0], q = params[1];
    need(p >= 1 && q >= 1, "su(p,q) needs p, q >= 1");
    m = p + q;
    const ExactMatrix form = signs({{1, p}, {-1, q}});
    cs = {preserves_hermitian(form), traceless()};
    r.theta_recipe = InvolutionRecipe::make(form);
    r.z_hint = scaled(signs({{q, p}, {-p, q}}), GaussianRational(Rational(0), Rational(1, m)));
  } else if (family == "so_star") {
    arity(1);
    const int k = params[0];
    need(k >= 2 && k % 2 == 0, "so_star(2n) needs an even size >= 2");
    const int n = k / 2;
    m = k;
    const ExactMatrix form = signs({{1, n}, {-1, n}});
    cs = {preserves_hermitian(form), preserves_bilinear(swap_unit(n))};
    r.theta_recipe = InvolutionRecipe::make(form);
    r.z_hint = scaled(form, GaussianRational(Rational(0), Rational(1, 2)));
  } else if (family == "sp_R") {
    arity(1);
    const int n = params[0];
    need(n >= 1, "sp_R(n) needs n >= 1");
    m = 2 * n;
    const ExactMatrix j0 = scaled(symplectic_unit(n), GaussianRational(-1));  // [[0,I],[-I,0]]
    cs = {is_real(), preserves_bilinear(j0)};
    r.theta_recipe = InvolutionRecipe::make(identity(m), false, true);
    r.z_hint = scaled(j0, GaussianRational(Rational(1, 2)));
  } else if (family == "so2") {
    arity(1);
    const int n = params[0];
    need(n >= 1, "so(2,n) needs n >= 1");
    m = n + 2;
    const ExactMatrix form = signs({{1, 2}, {-1, n}});
    cs = {is_real(), preserves_bilinear(form)};
    r.theta_recipe = InvolutionRecipe::make(form);
    ExactMatrix z = ExactMatrix::Zero(m, m);
    z(0, 1) = 1;
    z(1, 0) = -1;
    r.z_hint = z;
    label = "so(2," + std::to_string(n) + ")";
  } else if (family == "sl_R") {
    arity(1);
    const int n = params[0];
    need(n >= 2, "sl_R(n) needs n >= 2");
    m = n;
    cs = {is_real(), traceless()};
    r.theta_recipe = InvolutionRecipe::make(identity(m), false, true);
    if (n == 2) r.z_hint = scaled(scaled(symplectic_unit(1), GaussianRational(-1)), GaussianRational(Rational(1, 2)));
  } else if (family == "su_compact") {
    arity(1);
    m = params[0];
    need(m >= 2, "su(m) needs m >= 2");
    cs = {preserves_hermitian(identity(m)), traceless()};
    r.compact = true;
  } else if (family == "so_compact") {
    arity(1);
    m = params[0];
    need(m >= 2, "so(m) needs m >= 2");
    cs = {is_real(), preserves_bilinear(identity(m))};
    r.compact = true;
  } else if (family == "sp_compact") {
    arity(1);
    const int n = params[0];
    need(n >= 1, "sp(n) needs n >= 1");
    m = 2 * n;
    cs = {preserves_hermitian(identity(m)), preserves_bilinear(symplectic_unit(n))};
    r.compact = true;
  } else {
    throw UnsupportedFamily("no matrix model for family '" + family + "'");
  }
  need(m <= max_ambient, label + " needs ambient size " + std::to_string(m) + " > " +
                             std::to_string(max_ambient));
  if (r.compact) r.theta_recipe = InvolutionRecipe::identity(m);
  r.g = algebra_from_constraints(m, cs, label);
  r.theta = map_from_recipe(r.g, r.theta_recipe, "theta");
  if (!r.compact) {
    certify_involution(r.theta);
    certify_cartan(*r.g, r.theta);
  }
  return r;
}

// ---------------------------------------------------------------------------

bool is_characteristic(const RealFormAlgebra& g, const LinearAlgebraMap& theta, const QVector& z) {
  if (theta(z) != z) return false;
  const RealSpan k = fixed_subspace(g, theta, 1);
  const RealSpan p = fixed_subspace(g, theta, -1);
  for (int i = 0; i < k.dim(); ++i)
    for (Eigen::Index c = 0; c < z.size(); ++c)
      if (sgn(g.bracket(z, k.vector(i))(c)) != 0) return false;
  for (int i = 0; i < p.dim(); ++i) {
    const QVector w = p.vector(i);
    if (g.bracket(z, g.bracket(z, w)) != QVector(-w)) return false;
  }
  return p.dim() > 0;
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t()))
    return std::nullopt;
  mpz_class a, b;
  mpz_sqrt(a.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(b.get_mpz_t(), x.get_den_mpz_t());
  return Rational(a, b);
}

} // namespace

CharacteristicElement characteristic_element(const RealFormAlgebra& g, const LinearAlgebraMap& theta,
                                             const std::optional<ExactMatrix>& hint) {
  if (hint) {
    auto c = g.try_coordinates(*hint);
    if (!c || !is_characteristic(g, theta, *c))
      throw NotHermitianType("supplied element is not characteristic for " + g.label());
    return {*c, *hint};
  }
  const RealSpan k = fixed_subspace(g, theta, 1);
  const RealSpan p = fixed_subspace(g, theta, -1);
  const RealSpan c = centralizer(g, k, k);
  if (c.dim() != 1 || p.dim() == 0)
    throw NotHermitianType("center of the fixed algebra of " + g.label() + " has dim " +
                           std::to_string(c.dim()));
  const QVector z0 = c.vector(0);
  const QVector w = p.vector(0);
  const QVector v = g.bracket(z0, g.bracket(z0, w));
  Rational lambda = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (sgn(w(i)) != 0) {
      lambda = -v(i) / w(i);
      break;
    }
  auto root = rational_sqrt(lambda);
  if (!root || sgn(*root) == 0)
    throw NotHermitianType("ad of the central element has no rational normalization on " + g.label());
  const QVector z = z0 / *root;
  if (!is_characteristic(g, theta, z))
    throw NotHermitianType("ad of the central element does not square to -1 on " + g.label());
  return {z, g.element(z)};
}

CharacteristicElement characteristic_element(const Realization& r) {
  return characteristic_element(*r.g, r.theta, r.z_hint);
}

std::string to_string(Holomorphy h) {
  return h == Holomorphy::Holomorphic ? "holomorphic" : "anti-holomorphic";
}

Holomorphy holomorphic_type(const LinearAlgebraMap& tau, const QVector& z) {
  const QVector tz = tau(z);
  if (tz == z) return Holomorphy::Holomorphic;
  if (tz == QVector(-z)) return Holomorphy::AntiHolomorphic;
  throw NotTypeStable(tau.name + " sends the characteristic element to neither +Z nor -Z");
}

// ---------------------------------------------------------------------------

namespace {

struct RowModel {
  Realization base;
  InvolutionRecipe tau;
  std::optional<InvolutionRecipe> sigma;  // absent: sigma = tau theta
};

InvolutionRecipe ad(const ExactMatrix& a) { return InvolutionRecipe::make(a); }
InvolutionRecipe ad_conj(const ExactMatrix& a) { return InvolutionRecipe::make(a, true); }

RowModel row_model(const TableRow& row, const ParamMap& params) {
  auto v = [&](const char* k) {
    auto it = params.find(k);
    if (it == params.end()) throw DatasetError("row " + row.row + " needs parameter " + k);
    return static_cast<int>(it->second);
  };
  const int big = 64;
  const std::string& r = row.row;
  if (row.table == 3) {
    if (r == "su") {
      auto b = build("su", {v("p"), v("q")}, big);
      return {b, b.theta_recipe, ad_conj(identity(b.g->ambient_size()))};
    }
    if (r == "so*") {
      auto b = build("so_star", {2 * v("n")}, big);
      return {b, b.theta_recipe, ad_conj(identity(b.g->ambient_size()))};
    }
    if (r == "sp") {
      const int n = v("n");
      auto b = build("sp_R", {n}, big);
      return {b, b.theta_recipe, ad(signs({{1, n}, {-1, n}}))};
    }
    if (r == "so2") {
      const int n = v("n");
      auto b = build("so2", {n}, big);
      return {b, b.theta_recipe, ad(signs({{1, 1}, {-1, 1}, {1, 1}, {-1, n - 1}}))};
    }
  }
  if (row.table == 1) {
    if (r == "1") {
      const int p = v("p"), q = v("q"), i = v("i"), j = v("j");
      auto b = build("su", {p, q}, big);
      return {b, ad(signs({{1, i}, {-1, p - i}, {1, j}, {-1, q - j}})), ad_conj(identity(p + q))};
    }
    if (r == "2" || r == "3") {
      const int n = v("n");
      auto b = build("su", {n, n}, big);
      if (r == "2") return {b, ad_conj(symplectic_unit(n)), ad_conj(identity(2 * n))};
      return {b, ad_conj(swap_unit(n)), ad(swap_unit(n))};
    }
    if (r == "4" || r == "5") {
      const int n = v("n"), p = v("p");
      auto b = build("so_star", {2 * n}, big);
      const ExactMatrix d = signs({{1, p}, {-1, n - p}});
      const ExactMatrix tau = r == "4" ? block_diagonal(d, d) : block_diagonal(d, scaled(d, GaussianRational(-1)));
      return {b, ad(tau), ad_conj(identity(2 * n))};
    }
    if (r == "6") {
      const int n = v("n"), p = v("p");
      auto b = build("so2", {n}, big);
      return {b, ad(signs({{1, 2}, {1, p}, {-1, n - p}})),
              ad(signs({{1, 1}, {-1, 1}, {-1, p}, {1, 1}, {-1, n - p - 1}}))};
    }
    if (r == "7") {
      const int n = v("n");
      auto b = build("so2", {2 * n}, big);
      return {b, ad(block_diagonal(symplectic_unit(1), symplectic_unit(n))),
              ad(signs({{1, 1}, {-1, 1}, {1, n}, {-1, n}}))};
    }
    if (r == "8" || r == "9") {
      const int n = v("n"), p = v("p");
      auto b = build("sp_R", {n}, big);
      const ExactMatrix d = signs({{1, p}, {-1, n - p}});
      ExactMatrix tau;
      if (r == "8") {
        tau = ExactMatrix::Zero(2 * n, 2 * n);
        tau.topRightCorner(n, n) = d;
        tau.bottomLeftCorner(n, n) = scaled(d, GaussianRational(-1));
      } else {
        tau = block_diagonal(d, d);
      }
      return {b, ad(tau), ad(signs({{1, n}, {-1, n}}))};
    }
  }
  if (row.table == 2) {
    if (r == "20") {
      auto b = build("su", {v("p"), v("q")}, big);
      return {b, ad_conj(identity(b.g->ambient_size())), std::nullopt};
    }
    if (r == "21") {
      const int n = v("n");
      return {build("su", {n, n}, big), ad(swap_unit(n)), std::nullopt};
    }
    if (r == "22") {
      const int p = v("p"), q = v("q");
      return {build("su", {2 * p, 2 * q}, big),
              ad_conj(block_diagonal(symplectic_unit(p), symplectic_unit(q))), std::nullopt};
    }
    if (r == "23") {
      const int n = v("n");
      return {build("so_star", {2 * n}, big), ad_conj(identity(2 * n)), std::nullopt};
    }
    if (r == "24") {
      const int n = v("n");
      return {build("so_star", {4 * n}, big),
              ad_conj(block_diagonal(symplectic_unit(n), symplectic_unit(n))), std::nullopt};
    }
    if (r == "25") {
      const int n = v("n"), p = v("p");
      return {build("so2", {n}, big), ad(signs({{1, 1}, {-1, 1}, {1, p}, {-1, n - p}})), std::nullopt};
    }
    if (r == "26") {
      const int n = v("n");
      return {build("sp_R", {n}, big), ad(signs({{1, n}, {-1, n}})), std::nullopt};
    }
    if (r == "27") {
      const int n = v("n");
      return {build("sp_R", {2 * n}, big),
              ad(block_diagonal(symplectic_unit(n), scaled(symplectic_unit(n), GaussianRational(-1)))),
              std::nullopt};
    }
  }
  throw UnsupportedRow(row.id() + " has no matrix model");
}

void check_label(const RealFormAlgebra& g, const RealSpan& h, const LinearAlgebraMap& theta,
                 const std::optional<std::string>& label, const ParamMap& params, const std::string& what,
                 const std::string& row_id) {
  if (!label) return;
  const Fingerprint expected = label_fingerprint(*label, params);
  const Fingerprint got = fingerprint(g, h, theta);
  if (got != expected)
    throw FingerprintMismatch(row_id + " " + what + ": expected " + instantiate_label(*label, params) + " " +
                              expected.to_string() + ", computed " + got.to_string());
}

} // namespace

InvolutionTriple catalog_triple(const TableRow& row, const ParamMap& params, bool check_fingerprints) {
  if (!row.implementable) throw UnsupportedRow(row.id() + " is data-only");
  RowModel model = row_model(row, params);
  const AlgebraPtr& g = model.base.g;
  InvolutionTriple t;
  t.name = row.id() + "(" + format_params(params) + ")";
  t.g = g;
  t.theta = model.base.theta;
  t.tau = map_from_recipe(g, model.tau, "tau");
  certify_involution(t.tau);
  if (model.sigma) {
    t.sigma = map_from_recipe(g, *model.sigma, "sigma");
  } else {
    t.sigma = map_from_recipe(g, compose(model.tau, model.base.theta_recipe), "sigma");
  }
  certify_involution(t.sigma);
  t.z = characteristic_element(model.base);
  if (check_fingerprints) {
    const std::string id = row.id();
    const RealSpan gt = fixed_subspace(*g, t.tau, 1);
    const RealSpan gs = fixed_subspace(*g, t.sigma, 1);
    check_label(*g, whole(*g), t.theta, row.g, params, "g", id);
    if (row.table != 3) check_label(*g, gt, t.theta, row.g_tau, params, "g^tau", id);
    check_label(*g, gs, t.theta, row.g_sigma, params, "g^sigma", id);
    check_label(*g, intersect(gs, gt), t.theta, row.g_sigma_tau, params, "g^{sigma,tau}", id);
  }
  return t;
}

LinearAlgebraMap catalog_involution(const TableRow& row, const ParamMap& params) {
  return catalog_triple(row, params).tau;
}

LinearAlgebraMap catalog_sigma(const TableRow& row, const ParamMap& params) {
  return catalog_triple(row, params).sigma;
}

// ---------------------------------------------------------------------------

TypeIIData compact_typeII_data(TypeII variant, int p, int q) {
  if (p < 1 || q < 1) throw ParameterOutOfRange("Type II data needs p', q' >= 1");
  const int n = p + q + 1;
  const bool one = variant == TypeII::One;
  Realization base = build(one ? "su_compact" : "so_compact", {2 * n}, 4 * n);
  const ExactMatrix g0 = signs({{1, p}, {-1, q + 1}, {1, p + 1}, {-1, q}});
  const ExactMatrix j = symplectic_unit(n);
  const ExactMatrix inn = signs({{1, n}, {-1, n}});
  InvolutionRecipe tau_r, theta_r, sigma_r;
  if (one) {
    theta_r = InvolutionRecipe::make(g0);
    tau_r = InvolutionRecipe::make(j, true);
    sigma_r = InvolutionRecipe::make(inn, true);
  } else {
    tau_r = InvolutionRecipe::make(g0);
    theta_r = InvolutionRecipe::make(j);
    sigma_r = InvolutionRecipe::make(inn);
  }
  TypeIIData d{variant, p, q, base.g, {}, {}, {}, nullptr, {}, {}, {}, {}};
  d.tau = map_from_recipe(d.g, tau_r, "tau");
  d.theta = map_from_recipe(d.g, theta_r, "theta");
  d.sigma = map_from_recipe(d.g, sigma_r, "sigma");
  for (const auto* m : {&d.tau, &d.theta, &d.sigma}) certify_involution(*m);

  // the subalgebra on the coordinates other than p and n + p
  std::vector<int> keep;
  for (int i = 0; i < 2 * n; ++i)
    if (i != p && i != n + p) keep.push_back(i);
  const Realization small = build(one ? "su_compact" : "so_compact", {2 * n - 2}, 4 * n);
  std::vector<ExactMatrix> embedded;
  for (const auto& b : small.g->basis()) {
    ExactMatrix e = ExactMatrix::Zero(2 * n, 2 * n);
    for (int a = 0; a < 2 * n - 2; ++a)
      for (int c = 0; c < 2 * n - 2; ++c) e(keep[a], keep[c]) = b(a, c);
    embedded.push_back(std::move(e));
  }
  d.g_prime = make_algebra(embedded, std::string(one ? "su" : "so") + "(" + std::to_string(2 * n - 2) + ")'");
  try {
    d.tau_prime = map_from_recipe(d.g_prime, tau_r, "tau'");
    d.theta_prime = map_from_recipe(d.g_prime, theta_r, "theta'");
    d.sigma_prime = map_from_recipe(d.g_prime, sigma_r, "sigma'");
  } catch (const NotStable& e) {
    throw ConditionFailed(std::string("stabilization: ") + e.what());
  }
  if (!commute(d.tau_prime, d.theta_prime))
    throw ConditionFailed("commutation: tau and theta do not commute on the subalgebra");
  const RealSpan big_part = to_ambient(*d.g, multi_fixed(*d.g, {{&d.tau, -1}, {&d.theta, -1}}));
  const RealSpan small_part =
      to_ambient(*d.g_prime, multi_fixed(*d.g_prime, {{&d.tau_prime, -1}, {&d.theta_prime, -1}}));
  if (big_part != small_part)
    throw ConditionFailed("equality: the (-tau,-theta) spaces of the algebra and the subalgebra differ");
  d.z = characteristic_element(*d.g, d.theta);
  return d;
}

} // namespace vis

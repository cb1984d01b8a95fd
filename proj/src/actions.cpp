#include "vis/actions.hpp"

#include "vis/labels.hpp"

#include <map>

namespace vis {

TableRow dataset_row(const std::string& id) {
  for (auto& row : load_dataset(default_dataset_path()))
    if (row.id() == id) return row;
  throw DatasetError("dataset has no row " + id);
}

namespace {

ActionModel from_row(const std::string& row_id, const ParamMap& params, const std::string& id) {
  return symmetric_model(id, catalog_triple(dataset_row(row_id), params));
}

InvolutionTriple sl2_triple(const ExactMatrix& tau, const ExactMatrix& sigma, bool tau_is_theta) {
  const Realization r = build("sl_R", {2});
  InvolutionTriple t;
  t.name = "sl(2,R)";
  t.g = r.g;
  t.theta = r.theta;
  t.tau = tau_is_theta ? r.theta : map_from_recipe(r.g, InvolutionRecipe::make(tau), "tau");
  t.sigma = map_from_recipe(r.g, InvolutionRecipe::make(sigma), "sigma");
  t.z = characteristic_element(r);
  return t;
}

const ExactMatrix& d11() {
  static const ExactMatrix d = diagonal({1, -1});
  return d;
}

ActionModel su2_meridian(const std::string& id) {
  const Realization r = build("su_compact", {2});
  const auto tau = map_from_recipe(r.g, InvolutionRecipe::make(identity(2), true), "tau");
  const auto theta = map_from_recipe(r.g, InvolutionRecipe::make(d11()), "theta");
  const auto sigma = map_from_recipe(r.g, InvolutionRecipe::make(d11(), true), "sigma");
  const auto z = characteristic_element(*r.g, theta);
  const CompactReport rep = verify_compact_conditions(*r.g, tau, theta, sigma, z.coords);
  ActionModel m = compact_model(id, r.g, tau, theta, sigma, rep.torus, z);
  m.conditions = m.conditions && rep.pass();
  return m;
}

ActionModel grassmannian_pair(const std::string& id) {
  const Realization r = build("su_compact", {2});
  const auto gr = InvolutionRecipe::make(d11());
  const CompactDiagonal cd = compact_diag_setup(r, gr, gr, InvolutionRecipe::make(identity(2), true));
  const InvolutionTriple& t = cd.triple;
  ActionModel m = compact_model(id, t.g, t.tau, t.theta, t.sigma, cd.report.torus, t.z);
  m.conditions = m.conditions && cd.report.pass();
  return m;
}

ActionModel type_two(const std::string& id, TypeII variant, int p, int q) {
  const TypeIIData d = compact_typeII_data(variant, p, q);
  // torus from the subalgebra where tau and theta commute, carried into g
  const RealSpan small = maximal_abelian(
      *d.g_prime, multi_fixed(*d.g_prime, {{&d.sigma_prime, 1}, {&d.tau_prime, -1}, {&d.theta_prime, -1}}));
  const RealSpan torus = from_ambient(*d.g, to_ambient(*d.g_prime, small));
  const RealSpan pair = multi_fixed(*d.g, {{&d.tau, -1}, {&d.theta, -1}});
  ActionModel m = compact_model(id, d.g, d.tau, d.theta, d.sigma, torus, d.z);
  const bool maximal = is_maximal_abelian_in(*d.g, torus, pair);
  if (!maximal) m.detail += "torus is not maximal abelian in g^{-tau,-theta}; ";
  m.conditions = m.conditions && maximal;
  return m;
}

struct Entry {
  ActionSpec spec;
  std::function<ActionModel(const std::string&)> make;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {{"sl2R:K", "symmetric-subgroup", "SL(2,R)", "K = SO(2)", "SL(2,R)/SO(2)"},
       [](const std::string& id) { return symmetric_model(id, sl2_triple(d11(), d11(), true)); }},
      {{"sl2R:A", "symmetric-subgroup", "SL(2,R)", "A = SO(1,1)", "SL(2,R)/SO(2)"},
       [](const std::string& id) { return symmetric_model(id, sl2_triple(d11(), swap_unit(1), false)); }},
      {{"sl2R:N", "unipotent", "SL(2,R)", "N (upper unipotent)", "SL(2,R)/SO(2)"},
       [](const std::string& id) {
         const Realization r = build("sl_R", {2});
         const auto sigma = map_from_recipe(r.g, InvolutionRecipe::make(d11()), "sigma");
         return unipotent_model(id, r.g, r.theta, sigma, characteristic_element(r));
       }},
      {{"sp2R:GL2R", "symmetric-subgroup", "Sp(2,R)", "GL(2,R)", "Sp(2,R)/U(2)"},
       [](const std::string& id) { return from_row("table2/row26", {{"n", 2}}, id); }},
      {{"sp2R:U11", "symmetric-subgroup", "Sp(2,R)", "U(1,1)", "Sp(2,R)/U(2)"},
       [](const std::string& id) { return from_row("table1/row8", {{"n", 2}, {"p", 1}}, id); }},
      {{"sp2R:Sp1RxSp1R", "symmetric-subgroup", "Sp(2,R)", "Sp(1,R) x Sp(1,R)", "Sp(2,R)/U(2)"},
       [](const std::string& id) { return from_row("table1/row9", {{"n", 2}, {"p", 1}}, id); }},
      {{"sp2R:Sp1C", "symmetric-subgroup", "Sp(2,R)", "Sp(1,C)", "Sp(2,R)/U(2)"},
       [](const std::string& id) { return from_row("table2/row27", {{"n", 1}}, id); }},
      {{"su21:K", "symmetric-subgroup", "SU(2,1)", "K = S(U(2) x U(1))", "SU(2,1)/S(U(2) x U(1))"},
       [](const std::string& id) { return from_row("table3/su", {{"p", 2}, {"q", 1}}, id); }},
      {{"sl2R:diag", "diagonal", "SL(2,R) x SL(2,R)", "diag SL(2,R)", "D x D"},
       [](const std::string& id) {
         return symmetric_model(id, diagonal_setup(build("su", {1, 1}), InvolutionRecipe::make(identity(2), true),
                                                   DiagonalVariant::SameComplex));
       }},
      {{"sl2R:diag-conj", "diagonal-conjugate", "SL(2,R) x SL(2,R)", "diag SL(2,R)", "D x conj(D)"},
       [](const std::string& id) {
         return symmetric_model(id, diagonal_setup(build("su", {1, 1}), InvolutionRecipe::make(identity(2), true),
                                                   DiagonalVariant::ConjugateComplex));
       }},
      {{"su2:SO2", "compact", "SU(2)", "SO(2)", "SU(2)/U(1)"}, su2_meridian},
      {{"su2:Gr1xGr1", "compact", "SU(2) x SU(2)", "diag SU(2)", "Gr_1(C^2) x Gr_1(C^2)"}, grassmannian_pair},
      {{"su6:Sp3", "compact", "SU(6)", "Sp(3)", "SU(6)/S(U(3) x U(3))"},
       [](const std::string& id) { return type_two(id, TypeII::One, 1, 1); }},
  };
  return list;
}

} // namespace

const std::vector<ActionSpec>& action_registry() {
  static const std::vector<ActionSpec> specs = [] {
    std::vector<ActionSpec> out;
    for (const auto& e : entries()) out.push_back(e.spec);
    return out;
  }();
  return specs;
}

ActionModel build_action(const std::string& id) {
  for (const auto& e : entries())
    if (e.spec.id == id) {
      ActionModel m = e.make(id);
      m.group = e.spec.group;
      m.subgroup = e.spec.subgroup;
      m.space = e.spec.space;
      return m;
    }
  const std::string head = id.substr(0, id.find(':'));
  if (is_exceptional_label(head)) throw UnsupportedFamily("exceptional group " + head + " has no matrix model");
  throw UnsupportedFamily("unknown action '" + id + "'");
}

} // namespace vis

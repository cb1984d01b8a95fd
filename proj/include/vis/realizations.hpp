#pragma once

#include "vis/dataset.hpp"
#include "vis/lie.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace vis {

// A classical algebra in its standard matrix model with its Cartan involution.
// Compact families carry theta = identity.
struct Realization {
  std::string family;
  std::vector<int> params;
  AlgebraPtr g;
  InvolutionRecipe theta_recipe;
  LinearAlgebraMap theta;
  bool compact = false;
  std::optional<ExactMatrix> z_hint;  // closed-form characteristic element when known
};

// Families: su(p,q), so_star(2n), sp_R(n), so2(n) for so(2,n), sl_R(n),
// su_compact(m), so_compact(m), sp_compact(n).
// Throws UnsupportedFamily or ParameterOutOfRange. Noncompact Cartan involutions are certified.
Realization build(const std::string& family, const std::vector<int>& params, int max_ambient = 8);

using LinearConstraint = std::function<ExactMatrix(const ExactMatrix&)>;
// Solution space of real-linear matrix equations in gl(m, C), certified as a Lie algebra.
AlgebraPtr algebra_from_constraints(int m, const std::vector<LinearConstraint>& constraints,
                                    std::string label);

struct CharacteristicElement {
  QVector coords;
  ExactMatrix matrix;
};

// Checks ad(z) = 0 on the theta-fixed part and ad(z)^2 = -1 on the -1 eigenspace.
bool is_characteristic(const RealFormAlgebra& g, const LinearAlgebraMap& theta, const QVector& z);
// Uses the hint when given, otherwise normalizes a generator of the center of the fixed algebra.
// Throws NotHermitianType.
CharacteristicElement characteristic_element(const RealFormAlgebra& g, const LinearAlgebraMap& theta,
                                             const std::optional<ExactMatrix>& hint = std::nullopt);
CharacteristicElement characteristic_element(const Realization& r);

enum class Holomorphy { Holomorphic, AntiHolomorphic };
std::string to_string(Holomorphy h);
// Exact comparison of tau(z) with +z and -z; throws NotTypeStable otherwise.
Holomorphy holomorphic_type(const LinearAlgebraMap& tau, const QVector& z);

// Catalogued involutions for a dataset row.
struct InvolutionTriple {
  std::string name;
  AlgebraPtr g;
  LinearAlgebraMap theta, tau, sigma;
  CharacteristicElement z;
};

// Table 1 rows take sigma from the Table 4 column, Table 2 rows take sigma = tau theta,
// Table 3 rows take tau = theta. With check_fingerprints the fixed algebras are compared with the
// row labels (FingerprintMismatch). Throws UnsupportedRow for data-only rows.
InvolutionTriple catalog_triple(const TableRow& row, const ParamMap& params, bool check_fingerprints = true);
LinearAlgebraMap catalog_involution(const TableRow& row, const ParamMap& params);
LinearAlgebraMap catalog_sigma(const TableRow& row, const ParamMap& params);

// Compact Type II data: g_U with (tau, theta, sigma) and the subalgebra g_U' on which tau and
// theta commute. Conditions are checked on construction; ConditionFailed names the failing one.
enum class TypeII { One, Two };
struct TypeIIData {
  TypeII variant;
  int p, q;
  AlgebraPtr g;
  LinearAlgebraMap tau, theta, sigma;
  AlgebraPtr g_prime;
  LinearAlgebraMap tau_prime, theta_prime, sigma_prime;
  CharacteristicElement z;
};
TypeIIData compact_typeII_data(TypeII variant, int p, int q);

// Small matrix helpers shared with the other modules.
ExactMatrix symplectic_unit(int n);  // [[0,-I],[I,0]]
ExactMatrix swap_unit(int n);        // [[0,I],[I,0]]
ExactMatrix signs(const std::vector<std::pair<int, int>>& runs);  // diag from (value, count) runs

} // namespace vis

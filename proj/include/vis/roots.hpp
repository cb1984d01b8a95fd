#pragma once

#include "vis/analysis.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace vis {

// Joint ad-eigenspace decomposition of g under an abelian subspace a with ordered basis H_1..H_r.
struct RootDatum {
  AlgebraPtr g;
  RealSpan torus;
  std::vector<QVector> torus_basis;   // H_k in algebra coordinates
  std::vector<QVector> roots;         // lambda(H_k), sorted lexicographically
  std::vector<RealSpan> root_spaces;  // parallel to roots
  RealSpan zero_space;

  // Adapted basis: zero space first, then root spaces in order. Columns of `adapted`.
  QMatrix adapted, adapted_inverse;
  std::vector<int> block_of_column;  // -1 for the zero space, else root index

  // Integer lattice spanned by the roots (after clearing the common denominator).
  mpz_class denominator;
  std::vector<std::vector<mpz_class>> lattice_basis;  // Hermite normal form rows
  std::vector<std::vector<mpz_class>> root_coords;    // root = sum c_k * lattice_basis[k] / denominator

  // Pairs (s, t) of blocks with [g_s, g_t] != 0, block -1 being the zero space.
  std::vector<std::pair<int, int>> nonzero_brackets;

  // 2<l,m>/<m,m> integral for all root pairs, pairing from the Killing form on the torus.
  // Reported only; not every torus here is maximal abelian in p.
  bool cartan_integral = false;

  int rank() const { return static_cast<int>(torus_basis.size()); }
  int lattice_rank() const { return static_cast<int>(lattice_basis.size()); }
  std::optional<int> index_of(const QVector& root) const;  // nullopt for 0 or a non-root
};

// Throws NonRationalSpectrum / NotDiagonalizable, or ConditionFailed if the torus is not abelian.
RootDatum root_decomposition(const AlgebraPtr& g, const RealSpan& torus);

// Maximal abelian subspace of `space` built from elements whose ad has rational spectrum.
// Throws NonRationalSpectrum when no such completion is found.
RealSpan rational_torus(const RealFormAlgebra& g, const RealSpan& space);

struct Signature {
  unsigned mask = 0;            // bit k set: lattice generator k gets -1
  std::vector<int> values;      // per root, +-1
  bool trivial() const { return mask == 0; }
  std::string to_string() const;  // e.g. "+-" over lattice generators
  int generators = 0;
};

// All 2^s lattice characters restricted to the roots, s the lattice rank, in mask order.
std::vector<Signature> signatures(const RootDatum& d);
// epsilon(a+b) = epsilon(a) epsilon(b) on all root triples and epsilon(-a) = epsilon(a).
bool is_multiplicative(const RootDatum& d, const Signature& eps);

// tau_eps = tau on g(0), eps(lambda) tau on g(lambda). Certified involution; automorphism via the
// grading table (tau itself is certified). full_bracket_check adds the all-pairs test.
// Throws NotInvolution / NotAutomorphism / ConditionFailed (tau not -1 on the torus).
LinearAlgebraMap tau_epsilon(const LinearAlgebraMap& tau, const Signature& eps, const RootDatum& d,
                             bool full_bracket_check = false);

struct TwistReport {
  std::string signature;
  bool involution = false;
  bool automorphism = false;
  bool commutes_sigma = false;
  bool commutes_theta = false;
  bool rank_equal = false;
  int rank_pair = 0, rank_slice = 0;
  Fingerprint fixed;  // of g^{tau_eps}
  std::string detail;
  bool pass() const { return involution && automorphism && commutes_sigma && commutes_theta && rank_equal; }
};

// The torus of d must lie in g^{-theta, sigma, -tau}.
TwistReport verify_twisted_pair(const LinearAlgebraMap& sigma, const LinearAlgebraMap& tau,
                                const LinearAlgebraMap& theta, const RootDatum& d, const Signature& eps,
                                bool full_bracket_check = false);

// Torus for the twisted family of (tau, theta[, sigma]): rational maximal abelian subspace of
// g^{-theta, sigma, -tau}, or of g^{-theta, -tau} without sigma.
RealSpan family_torus(const RealFormAlgebra& g, const LinearAlgebraMap& tau, const LinearAlgebraMap& theta,
                      const LinearAlgebraMap* sigma);

struct EpsilonEntry {
  Signature eps;
  TwistReport report;
};
std::vector<EpsilonEntry> epsilon_family(const LinearAlgebraMap& tau, const LinearAlgebraMap& theta,
                                         const LinearAlgebraMap* sigma, bool full_bracket_check = false);

// Indices of positive roots. Without a functional: first nonzero coordinate positive.
// Throws DegenerateFunctional when the functional vanishes on a root.
std::vector<int> positive_system(const RootDatum& d, const std::optional<QVector>& functional = std::nullopt);

struct NilpotentPart {
  RealSpan space;
  int central_series_length = 0;  // steps until the lower central series reaches 0
};
// Sum of the positive root spaces, certified subalgebra and nilpotent (ConditionFailed otherwise).
NilpotentPart nilpotent_part(const RootDatum& d, const std::vector<int>& positive);

bool stabilizes(const LinearAlgebraMap& m, const RealSpan& s);

} // namespace vis

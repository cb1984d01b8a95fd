#pragma once

#include "vis/realizations.hpp"

#include <optional>
#include <string>

namespace vis {

// Evidence for the three hypotheses on a (sigma, tau, theta) triple:
// pairwise commutation, equal rank of g^{-theta,-tau} and g^{-theta,sigma,-tau}, sigma Z = -Z.
struct TripleReport {
  bool commute = false;
  bool rank_equal = false;
  bool anti_holomorphic = false;
  int rank_pair = 0;   // maximal abelian in g^{-theta,-tau}
  int rank_slice = 0;  // maximal abelian in g^{-theta,sigma,-tau}
  std::string witness;
  bool pass() const { return commute && rank_equal && anti_holomorphic; }
};

// Certifies theta as a Cartan involution first (NotCartan).
TripleReport verify_triple(const RealFormAlgebra& g, const LinearAlgebraMap& tau, const LinearAlgebraMap& theta,
                           const LinearAlgebraMap& sigma, const QVector& z, bool certify_theta = true);
TripleReport verify_triple(const InvolutionTriple& t, bool certify_theta = true);

// Maximal abelian subspace of g^{-theta,sigma,-tau}; checked abelian and inside all three eigenspaces.
RealSpan slice_subspace(const RealFormAlgebra& g, const LinearAlgebraMap& tau, const LinearAlgebraMap& theta,
                        const LinearAlgebraMap& sigma);

// Per-row evidence used by the batch driver.
struct RowReport {
  std::string row_id;
  ParamMap params;
  std::string status;  // pass | fail | data-only
  std::string detail;
  TripleReport triple;
  std::optional<long> expected_rank;
  std::string holomorphy;
  int slice_dim = 0;
};

// Common rank against the row's closed form; throws RankMismatch with both values.
long verify_rank_formula(const TableRow& row, const ParamMap& params);
long verify_rank_formula(const TableRow& row, const ParamMap& params, const InvolutionTriple& t);

// Full row check: catalog fingerprints, triple hypotheses, rank formula, holomorphy split, slice.
// Never throws for verification failures; they land in status and detail.
RowReport verify_row(const TableRow& row, const ParamMap& params);
RowReport data_only_report(const TableRow& row);

// g + g with swap tau and theta on both factors.
// SameComplex: sigma = (sigma', sigma'), Z = (Z, Z). ConjugateComplex: sigma = tau theta, Z = (Z, -Z).
enum class DiagonalVariant { SameComplex, ConjugateComplex };
Realization direct_sum(const Realization& base);
InvolutionTriple diagonal_setup(const Realization& base, const InvolutionRecipe& sigma_prime, DiagonalVariant v);

// Compact counterpart: sigma commutes with tau and theta, g^{sigma,-tau,-theta} contains a
// maximal abelian subspace of g^{-tau,-theta}, sigma Z = -Z. tau and theta need not commute.
struct CompactReport {
  bool commute = false;
  bool contains_maximal = false;
  bool anti_holomorphic = false;
  int rank = 0;
  RealSpan torus;
  bool pass() const { return commute && contains_maximal && anti_holomorphic; }
};
CompactReport verify_compact_conditions(const RealFormAlgebra& g, const LinearAlgebraMap& tau,
                                        const LinearAlgebraMap& theta, const LinearAlgebraMap& sigma,
                                        const QVector& z);

// Diagonal action on a product of two compact Hermitian quotients G_U/K_1 x G_U/K_2.
struct CompactDiagonal {
  InvolutionTriple triple;
  CompactReport report;
};
// theta1 and theta2 must share their conjugation flags; throws ConditionFailed if the conditions fail.
CompactDiagonal compact_diag_setup(const Realization& compact_base, const InvolutionRecipe& theta1,
                                   const InvolutionRecipe& theta2, const InvolutionRecipe& sigma_prime);

// Maximal abelian subspace that is the whole centralizer of itself inside `within`.
bool is_maximal_abelian_in(const RealFormAlgebra& g, const RealSpan& a, const RealSpan& within);

} // namespace vis

#pragma once

#include "vis/exact.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace vis {

using SparseVector = std::vector<std::pair<int, Rational>>;

// Real Lie algebra spanned by exact matrices in gl(m, C).
// The stored basis is the canonical echelon basis of the span, so coordinates are pivot reads.
class RealFormAlgebra {
public:
  int ambient_size() const { return m_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::string& label() const { return label_; }
  const std::vector<ExactMatrix>& basis() const { return basis_; }
  const RealSpan& span() const { return span_; }

  std::optional<QVector> try_coordinates(const ExactMatrix& x) const;
  // Throws NotStable when x lies outside the algebra.
  QVector coordinates(const ExactMatrix& x) const;
  ExactMatrix element(const QVector& coords) const;

  // Bracket in coordinates, through the cached structure constants.
  QVector bracket(const QVector& x, const QVector& y) const;
  // ad(x) as a dim x dim matrix on coordinates.
  QMatrix ad(const QVector& x) const;
  // [b_i, b_j] in coordinates.
  const SparseVector& structure(int i, int j) const;
  QVector unit(int i) const;

  friend std::shared_ptr<const RealFormAlgebra> make_algebra(const std::vector<ExactMatrix>&,
                                                              std::string);

private:
  int m_ = 0;
  std::string label_;
  std::vector<ExactMatrix> basis_;
  RealSpan span_;
  std::vector<SparseVector> structure_;  // i * dim + j, i < j
  SparseVector zero_;
};

using AlgebraPtr = std::shared_ptr<const RealFormAlgebra>;

// Certifies closure on all basis pairs; throws NotClosedUnderBracket with the witness pair.
AlgebraPtr make_algebra(const std::vector<ExactMatrix>& basis, std::string label);

// X -> sign * A phi(X) A^-1, phi = optional entrywise conjugation then optional X -> -X^T.
struct InvolutionRecipe {
  ExactMatrix conjugator;
  ExactMatrix conjugator_inverse;
  bool conj = false;
  bool neg_transpose = false;
  int sign = 1;

  static InvolutionRecipe make(const ExactMatrix& a, bool conj = false, bool neg_transpose = false,
                               int sign = 1);
  static InvolutionRecipe identity(int m) { return make(vis::identity(m)); }

  ExactMatrix apply(const ExactMatrix& x) const;
  // The group-level map g -> A phi_G(g) A^-1 matching this recipe on exp(algebra).
  ExactMatrix apply_group(const ExactMatrix& g) const;
  int ambient_size() const { return static_cast<int>(conjugator.rows()); }
  std::string describe() const;
};

// r1 o r2.
InvolutionRecipe compose(const InvolutionRecipe& r1, const InvolutionRecipe& r2);
// Ad(g) o r o Ad(g)^-1.
InvolutionRecipe conjugate_by(const InvolutionRecipe& r, const ExactMatrix& g);

struct LinearAlgebraMap {
  AlgebraPtr algebra;
  QMatrix action;
  std::optional<InvolutionRecipe> recipe;
  std::string name;

  QVector operator()(const QVector& x) const { return multiply(action, x); }
};

LinearAlgebraMap identity_map(const AlgebraPtr& g);
// Throws NotStable when the recipe does not preserve g.
LinearAlgebraMap map_from_recipe(const AlgebraPtr& g, const InvolutionRecipe& r, std::string name);
LinearAlgebraMap compose(const LinearAlgebraMap& a, const LinearAlgebraMap& b, std::string name = "");
bool commute(const LinearAlgebraMap& a, const LinearAlgebraMap& b);
bool is_involution(const LinearAlgebraMap& m);
// Exact bracket check on all basis pairs; witness receives the first failing pair.
bool is_automorphism(const LinearAlgebraMap& m, std::pair<int, int>* witness = nullptr);
// Throws NotInvolution or NotAutomorphism.
void certify_involution(const LinearAlgebraMap& m);

// Subspaces below are RealSpans in the algebra's coordinate space.
RealSpan whole(const RealFormAlgebra& g);
RealSpan fixed_subspace(const RealFormAlgebra& g, const LinearAlgebraMap& iota, int sign);
RealSpan multi_fixed(const RealFormAlgebra& g,
                     const std::vector<std::pair<const LinearAlgebraMap*, int>>& constraints);
// Greedy maximal abelian subspace of v; order permutes the stored basis of v before the greedy.
RealSpan maximal_abelian(const RealFormAlgebra& g, const RealSpan& v,
                         const std::vector<int>* order = nullptr);
RealSpan centralizer(const RealFormAlgebra& g, const RealSpan& s, const RealSpan& within);
bool is_abelian(const RealFormAlgebra& g, const RealSpan& s);
bool is_subalgebra(const RealFormAlgebra& g, const RealSpan& s);
RealSpan bracket_span(const RealFormAlgebra& g, const RealSpan& a, const RealSpan& b);
RealSpan image(const LinearAlgebraMap& m, const RealSpan& s);
RealSpan center(const RealFormAlgebra& g);

Rational killing(const RealFormAlgebra& g, const QVector& x, const QVector& y);
QMatrix killing_gram(const RealFormAlgebra& g, const RealSpan& s);

// Killing form negative definite on g^theta and positive definite on g^-theta; throws NotCartan.
void certify_cartan(const RealFormAlgebra& g, const LinearAlgebraMap& theta);
int real_rank(const RealFormAlgebra& g, const LinearAlgebraMap& theta, bool certify = true);
int real_rank_of_pair(const RealFormAlgebra& g, const LinearAlgebraMap& tau,
                      const LinearAlgebraMap& theta, bool certify = true);

struct Fingerprint {
  int dim = 0;
  int center_dim = 0;
  int real_rank = 0;
  Inertia killing;  // intrinsic Killing form of the subalgebra

  friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
    return a.dim == b.dim && a.center_dim == b.center_dim && a.real_rank == b.real_rank &&
           a.killing == b.killing;
  }
  friend bool operator!=(const Fingerprint& a, const Fingerprint& b) { return !(a == b); }
  std::string to_string() const;
};

// h must be a theta-stable subalgebra of g.
Fingerprint fingerprint(const RealFormAlgebra& g, const RealSpan& h, const LinearAlgebraMap& theta);

// Flattened ambient coordinates of a subspace given in algebra coordinates.
RealSpan to_ambient(const RealFormAlgebra& g, const RealSpan& s);
// Inverse direction; throws NotStable if some vector is outside g.
RealSpan from_ambient(const RealFormAlgebra& g, const RealSpan& ambient);

} // namespace vis

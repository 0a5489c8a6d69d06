#pragma once

#include <string>
#include <vector>

#include "ambrose/tensor.hpp"

namespace ambrose {

/// Finite-dimensional real Lie algebra given by structure constants
/// [b_i, b_j] = c^k_{ij} b_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  /// `c` is indexed (k * m + i) * m + j. Checks antisymmetry and Jacobi.
  LieAlgebra(std::string name, std::vector<std::string> labels, std::vector<double> c);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int dim() const { return static_cast<int>(labels_.size()); }

  double structure(int k, int i, int j) const { return c_[(k * dim() + i) * dim() + j]; }
  Vec bracket(const Vec& a, const Vec& b) const;
  /// (ad a)(k, j) = a^i c^k_{ij}
  Mat ad(const Vec& a) const;
  Mat ad_basis(int i) const;
  Vec basis(int i) const;

  double jacobi_defect() const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<double> c_;
};

/// Structure constants of the span of linearly independent matrices.
LieAlgebra algebra_from_matrices(std::string name, std::vector<std::string> labels, const std::vector<Mat>& gens);

/// so(2), so(3), u(1), su(2), so(n) for n >= 2.
LieAlgebra lie_algebra(const std::string& name);

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

/// Vector representation of so(n). For n = 3 the basis L_1, L_2, L_3 with
/// L_i v = e_i x v; otherwise L_{ij} = e_j e_i^T - e_i e_j^T for i < j.
std::vector<Mat> so_generators(int n);
LieAlgebra so_algebra(int n);

std::vector<Mat> adjoint_generators(const LieAlgebra& alg);

Mat killing_form(const LieAlgebra& alg);

/// Ad-invariant inner product: minus the Killing form plus the identity on the center.
Mat default_inner(const LieAlgebra& alg);

/// max |<[a,b],c> + <b,[a,c]>| over basis triples.
double ad_invariance_defect(const LieAlgebra& alg, const Mat& inner);

/// max ||rho([b_i,b_j]) - [rho(b_i), rho(b_j)]|| over basis pairs.
double representation_defect(const LieAlgebra& alg, const std::vector<Mat>& gens);

/// Least-squares coordinates of `m` in span(gens).
Vec matrix_coefficients(const std::vector<Mat>& gens, const Mat& m);

Mat combine(const std::vector<Mat>& gens, const Vec& coeffs);

/// Infinitesimal action of an algebra on tensors: contravariant axes by
/// vector_gens, covariant axes by minus their transposes, lie axes by lie_gens.
/// Either list may be all zeros for the part of the algebra not acting there.
struct TensorRep {
  LieAlgebra algebra;
  std::vector<Mat> vector_gens;
  std::vector<Mat> lie_gens;

  int dim() const { return algebra.dim(); }
  int n() const { return vector_gens.empty() ? 0 : static_cast<int>(vector_gens.front().rows()); }
  int lie_dim() const { return lie_gens.empty() ? 0 : static_cast<int>(lie_gens.front().rows()); }
};

/// so(n) + k acting on frame-expressed tensors; k acts on lie axes through
/// `fiber_gens` (the adjoint representation if empty).
TensorRep frame_rep(int n, const LieAlgebra& k, std::vector<Mat> fiber_gens = {});

/// The same algebra acting on its own adjoint-valued tensors.
TensorRep adjoint_rep(const TensorRep& rep);

DenseTensor tensor_action(const Vec& b, const DenseTensor& t, const TensorRep& rep);

/// Column j is the concatenated action of basis element j on every tensor.
Mat stacked_action_matrix(const std::vector<DenseTensor>& tensors, const TensorRep& rep);

struct Nullspace {
  Mat basis;
  Vec singular_values;
  double threshold = 0.0;
  bool ambiguous = false;
};

/// SVD kernel: singular values at or below max(rel_tol * sigma_max, abs_floor)
/// count as zero. `ambiguous` is set when a singular value lies within a
/// factor 10 of the threshold.
Nullspace nullspace_svd(const Mat& m, double rel_tol = 1e-8, double abs_floor = 0.0);
Mat nullspace(const Mat& m, double rel_tol = 1e-8);

/// Angles between span(b) and its projection onto span(a) (both orthonormal),
/// computed from sines for accuracy near zero.
Vec containment_angles(const Mat& a, const Mat& b);

/// Principal angles between two orthonormal bases of equal dimension.
Vec principal_angles(const Mat& a, const Mat& b);

/// Projection onto span(h) along its inner-orthogonal complement.
Mat inner_projector(const Mat& h, const Mat& inner);

/// Inner-orthogonal complement k of a subalgebra h, checked for [h, k] in k.
Mat reductive_complement(const LieAlgebra& alg, const Mat& h, const Mat& inner, double subalgebra_tol = 1e-9,
                         double invariance_tol = 1e-8);

/// max ||[u, v] - proj_h [u, v]|| over basis pairs of h.
double subalgebra_defect(const LieAlgebra& alg, const Mat& h);

Mat matrix_exp(const Mat& m);
Mat group_exp(const Vec& theta, const std::vector<Mat>& gens);

/// Group element acting on tensors: contra axes, co axes, lie axes.
struct GroupElement {
  Mat contra;
  Mat co;
  Mat lie;
};

GroupElement group_identity(const TensorRep& rep);
GroupElement group_exp(const Vec& theta, const TensorRep& rep);
GroupElement compose(const GroupElement& a, const GroupElement& b);
DenseTensor group_act(const GroupElement& g, const DenseTensor& t);

}  // namespace ambrose

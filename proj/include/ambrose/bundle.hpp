#pragma once

#include <vector>

#include "ambrose/calculus.hpp"
#include "ambrose/lie.hpp"

namespace ambrose {

/// Lie-algebra-valued 1-form a(E_a) in a local trivialization, axes (Co, Lie).
struct ConnectionForm {
  LieAlgebra algebra;
  TensorEval eval;

  DenseTensor operator()(const Vec& x) const { return eval(x); }
  bool trivial() const { return algebra.dim() == 0; }
};

ConnectionForm zero_form(const LieAlgebra& alg, int n);
ConnectionForm form_sum(const ConnectionForm& a, const ConnectionForm& b, double scale = 1.0);

/// Connection on every associated bundle: linear part on manifold axes,
/// structure form acting on lie axes through `fiber_gens` (adjoint if empty).
struct BundleConnection {
  LinearConnection linear;
  ConnectionForm form;
  std::vector<Mat> fiber_gens;
};

/// Tuple of tensor fields, all expressed in the chart's working frame.
using SectionSpec = std::vector<TensorField>;

/// Adjoint-valued 1-form beta = (S, alpha): S^c_{ab} is an endomorphism-valued
/// 1-form (derivative index a), alpha has axes (Co, Lie). Either part may be empty.
struct AdjointForm {
  TensorEval endo;
  TensorEval lie;
};

/// F_{ab} = E_a(a_b) - E_b(a_a) + [a_a, a_b] - C^c_{ab} a_c, axes (Co, Co, Lie).
DenseTensor curvature_form(const ConnectionForm& a, const Chart& chart, const Vec& x);
TensorField curvature_form_field(const ConnectionForm& a, const Chart& chart);

/// Adds rho(a_a) acting on lie axes to every leading slice a of `grad`.
void add_form_terms(DenseTensor& grad, const DenseTensor& form, const std::vector<Mat>& gens, const DenseTensor& t);

/// (nabla s)_a = E_a(s) + connection terms on manifold axes + rho(a_a) s on lie axes.
DenseTensor assoc_covariant_derivative(const BundleConnection& b, const TensorField& s, const Chart& chart,
                                       const Vec& x);
TensorField assoc_derivative_field(const BundleConnection& b, TensorField s, const Chart& chart);

/// beta . eta with a leading covariant axis for the form slot. `gens` act on lie axes.
DenseTensor pair(const DenseTensor* endo, const DenseTensor* lie, const std::vector<Mat>& gens,
                 const DenseTensor& eta);

/// d^A alpha(E_a, E_b) including the frame bracket term, axes (Co, Co, Lie).
DenseTensor exterior_cov_derivative(const ConnectionForm& a, const TensorField& alpha, const Chart& chart,
                                    const Vec& x);

/// alpha(T(E_a, E_b)).
DenseTensor form_of_torsion(const DenseTensor& alpha, const DenseTensor& torsion);

/// ||F^{a+alpha} - F^a - d^a alpha - [alpha, alpha]||_max at x.
double curvature_variation_check(const ConnectionForm& a, const TensorField& alpha, const Chart& chart,
                                 const Vec& x);

/// ||nabla^{b'} eta - nabla^b eta - beta . eta||_max with beta = b' - b.
double connection_variation_check(const TensorField& eta, const BundleConnection& b, const BundleConnection& bp,
                                  const Chart& chart, const Vec& x);

/// ||nabla(beta . eta) - ((nabla beta) . eta + beta . nabla eta)||_max.
double leibniz_check(const AdjointForm& beta, const TensorField& eta, const BundleConnection& b, const Chart& chart,
                     const Vec& x);

/// Covariant derivative of beta itself (endo part with the linear connection,
/// lie part with the linear connection and ad of the form).
DenseTensor adjoint_form_derivative_endo(const AdjointForm& beta, const BundleConnection& b, const Chart& chart,
                                         const Vec& x);
DenseTensor adjoint_form_derivative_lie(const AdjointForm& beta, const BundleConnection& b, const Chart& chart,
                                        const Vec& x);

/// d^A F^A.
DenseTensor bianchi_defect(const ConnectionForm& a, const Chart& chart, const Vec& x);

}  // namespace ambrose

#pragma once

#include <functional>
#include <memory>

#include "ambrose/frame.hpp"
#include "ambrose/tensor.hpp"

namespace ambrose {

using TensorEval = std::function<DenseTensor(const Vec&)>;
using MatrixEval = std::function<Mat(const Vec&)>;

/// Working frame of a chart: columns are frame vectors E_a in coordinates.
/// A holonomic frame is the coordinate frame itself. `structure`, when
/// given, returns C^c_{ab} with [E_a, E_b] = C^c_{ab} E_c (axes Contra, Co, Co);
/// otherwise it is computed by finite differences of `vectors`.
struct FrameField {
  MatrixEval vectors;
  TensorEval structure;
  bool holonomic = true;
};

/// A single coordinate box. Every manifold axis of every tensor on this chart
/// is expressed in the chart's working frame.
class Chart {
 public:
  Chart(Vec lo, Vec hi, double margin, double step_scale = 1e-3);
  Chart(Vec lo, Vec hi, double margin, FrameField frame, double step_scale = 1e-3);

  int dim() const { return static_cast<int>(lo_.size()); }
  const Vec& lo() const { return lo_; }
  const Vec& hi() const { return hi_; }
  double margin() const { return margin_; }
  double step_scale() const { return step_scale_; }
  bool holonomic() const { return frame_.holonomic; }
  const FrameField& frame_field() const { return frame_; }

  bool inside(const Vec& x) const;
  bool inside_margin(const Vec& x) const;

  Mat frame_at(const Vec& x) const;
  DenseTensor structure_at(const Vec& x) const;

  /// Same box with the coordinate frame as working frame.
  Chart coordinate_chart() const;
  Chart with_step_scale(double step_scale) const;

 private:
  Vec lo_;
  Vec hi_;
  double margin_;
  double step_scale_;
  FrameField frame_;
};

struct TensorField {
  std::vector<Axis> axes;
  std::vector<int> dims;
  TensorEval eval;
  /// Optional exact frame gradient: leading covariant axis a holds E_a(t).
  TensorEval frame_gradient;

  DenseTensor operator()(const Vec& x) const;
};

TensorField make_field(std::vector<Axis> axes, std::vector<int> dims, TensorEval eval);

/// Symmetric positive-definite metric in coordinates.
struct MetricField {
  MatrixEval eval;
  Mat operator()(const Vec& x) const { return eval(x); }
};

/// Metric components in the chart's working frame, E^T G E.
Mat frame_metric(const MetricField& g, const Chart& chart, const Vec& x);

/// Orthonormal (Cholesky) frame relative to the working frame at x.
OrthoFrame ortho_frame(const MetricField& g, const Chart& chart, const Vec& x);

/// Linear connection given by coefficients in the working frame:
/// nabla_{E_a} E_b = w^c_{ab} E_c, stored with axes (Contra c, Co a, Co b).
/// On a holonomic chart these are the Christoffel symbols Gamma^k_{ij}.
struct LinearConnection {
  TensorEval coeffs;
  bool symmetric_hint = false;

  DenseTensor operator()(const Vec& x) const { return coeffs(x); }
};

LinearConnection zero_connection(int n);

/// Central difference with one Richardson step along coordinate mu.
DenseTensor fd_partial(const TensorField& field, const Chart& chart, const Vec& x, int mu);

/// Same scheme along an arbitrary coordinate direction.
DenseTensor fd_directional(const TensorEval& f, const Chart& chart, const Vec& x, const Vec& dir);

/// Raw (pre-Richardson) central difference, exposed for convergence checks.
DenseTensor fd_central(const TensorEval& f, const Chart& chart, const Vec& x, const Vec& dir, double h);

/// Step used for direction `dir` on this chart.
double fd_step(const Chart& chart, const Vec& dir);

/// Frame derivatives E_a(t) for every a, stacked on a leading covariant axis.
DenseTensor frame_gradient(const TensorField& field, const Chart& chart, const Vec& x);

/// Levi-Civita Christoffel symbols in coordinates from finite differences of g.
DenseTensor christoffel(const MetricField& g, const Chart& chart, const Vec& x);

/// Levi-Civita connection of g in the chart's working frame (finite differences).
LinearConnection levi_civita(const MetricField& g, const Chart& chart);

/// Adds the linear-connection correction to a tensor with a leading derivative
/// axis: + w on contravariant axes, - w^T on covariant ones. Lie axes are skipped.
void add_connection_terms(DenseTensor& grad, const DenseTensor& coeffs, const DenseTensor& t);

/// nabla t with the derivative axis first.
DenseTensor covariant_derivative(const LinearConnection& conn, const TensorField& t, const Chart& chart,
                                 const Vec& x);

TensorField covariant_derivative_field(const LinearConnection& conn, TensorField t, const Chart& chart);

/// R^l_{kij}: R(E_i, E_j) E_k = R^l_{kij} E_l.
DenseTensor curvature(const LinearConnection& conn, const Chart& chart, const Vec& x);

/// T^k_{ij}: T(E_i, E_j) = T^k_{ij} E_k, including the frame bracket term.
DenseTensor torsion(const LinearConnection& conn, const Chart& chart, const Vec& x);

TensorField curvature_field(const LinearConnection& conn, const Chart& chart);
TensorField torsion_field(const LinearConnection& conn, const Chart& chart);

/// R_{lkij} = g_{lm} R^m_{kij} in the working frame.
TensorField lowered_curvature_field(const LinearConnection& conn, const MetricField& g, const Chart& chart);

/// T_S(X, Y) = S(X)(Y) - S(Y)(X) for S^k_{ij} = S(E_i)(E_j)^k.
DenseTensor difference_torsion(const DenseTensor& s);

/// Coefficient difference of two connections (a (1,2) tensor).
LinearConnection connection_difference(const LinearConnection& a, const LinearConnection& b);
LinearConnection connection_sum(const LinearConnection& a, const TensorEval& s);

/// Christoffel symbols in coordinates of a connection given in a moving frame.
DenseTensor frame_to_coordinate(const LinearConnection& conn, const Chart& chart, const Vec& x);

/// Connection coefficients in the working frame of a connection given in coordinates.
DenseTensor coordinate_to_frame(const DenseTensor& gamma, const Chart& chart, const Vec& x);

/// frame_to_coordinate as a connection on chart.coordinate_chart().
LinearConnection coordinate_connection(const LinearConnection& conn, const Chart& chart);

/// Coordinate-frame tensor field from a working-frame one (manifold axes converted).
TensorField to_coordinates(const TensorField& t, const Chart& chart);

}  // namespace ambrose

#pragma once

#include <functional>
#include <vector>

#include "ambrose/bundle.hpp"
#include "ambrose/parallel.hpp"
#include "ambrose/report.hpp"

namespace ambrose {

/// Connection metric on U x K with K represented by exponential coordinates t
/// near the identity. Points of the total space are y = (x, t).
struct TotalSpaceModel {
  Chart base;
  MetricField g;
  LinearConnection conn;
  LieAlgebra algebra;
  Mat inner;
  ConnectionForm a;
  double fiber_radius = 0.6;
};

/// Tangent vector at (x, t) split by the connection: base vector h in the
/// working frame (the horizontal lift of h) plus v^# with v in k.
struct FrameVector {
  Vec h;
  Vec v;
};

/// Field in the generated class: horizontal lift of a base field plus the
/// vertical field y -> (vertical(y))^#.
struct GeneratedField {
  std::function<Vec(const Vec& x)> base;
  std::function<Vec(const Vec& y)> vertical;
};

Chart total_chart(const TotalSpaceModel& model);
Vec base_part(const TotalSpaceModel& model, const Vec& y);
Vec fiber_part(const TotalSpaceModel& model, const Vec& y);

/// Ad(exp(-t)) on the algebra.
Mat ad_inverse_exp(const LieAlgebra& alg, const Vec& t);

/// Left-trivialized velocity c of exp(t + s tau): c = ((1 - e^{-ad t}) / ad t) tau.
Mat dexp_left(const LieAlgebra& alg, const Vec& t);

/// Coordinate components (dx, dt) of a split vector at y, and the inverse.
Vec coordinate_vector(const TotalSpaceModel& model, const Vec& y, const FrameVector& u);
FrameVector split_vector(const TotalSpaceModel& model, const Vec& y, const Vec& coords);

/// g_A in (x, t) coordinates.
Mat connection_metric(const TotalSpaceModel& model, const Vec& y);
double frame_vector_norm(const TotalSpaceModel& model, const Vec& y, const FrameVector& u);

FrameVector evaluate(const GeneratedField& f, const TotalSpaceModel& model, const Vec& y);

GeneratedField horizontal_lift(std::function<Vec(const Vec&)> base);
GeneratedField fundamental_field(const Vec& a);
/// xi(nu) for an adjoint section nu given in the trivialization.
GeneratedField xi_field(const TotalSpaceModel& model, std::function<Vec(const Vec&)> nu);

/// alpha(Z) = (a - a0)(Z) at x.
Vec horizontal_lift_shift(const ConnectionForm& a0, const ConnectionForm& a, const Vec& z, const Vec& x);

/// nabla-bar_U W at y from the case table of the total-space connection.
FrameVector bar_connection_apply(const TotalSpaceModel& model, const FrameVector& u, const GeneratedField& w,
                                 const Vec& y);

/// Pointwise torsion and curvature from the case table.
FrameVector bar_torsion(const TotalSpaceModel& model, const FrameVector& u, const FrameVector& v, const Vec& y);
FrameVector bar_curvature(const TotalSpaceModel& model, const FrameVector& u, const FrameVector& v,
                          const FrameVector& w, const Vec& y);

/// nabla-bar_U V - nabla-bar_V U - [U, V] with the bracket from finite differences in (x, t).
FrameVector direct_torsion(const TotalSpaceModel& model, const GeneratedField& u, const GeneratedField& v,
                           const Vec& y);

/// Lie bracket of generated fields from finite differences in (x, t).
FrameVector field_bracket(const TotalSpaceModel& model, const GeneratedField& u, const GeneratedField& v,
                          const Vec& y);

/// (nabla-bar_Z T-bar)(U, V) and (nabla-bar_Z R-bar)(U, V) W via the Leibniz rule.
FrameVector bar_torsion_derivative(const TotalSpaceModel& model, const GeneratedField& z, const GeneratedField& u,
                                   const GeneratedField& v, const Vec& y);
FrameVector bar_curvature_derivative(const TotalSpaceModel& model, const GeneratedField& z, const GeneratedField& u,
                                     const GeneratedField& v, const GeneratedField& w, const Vec& y);

/// Horizontal lifts of the working frame followed by fundamental fields of the algebra basis.
std::vector<GeneratedField> adapted_basis(const TotalSpaceModel& model);

/// A few non-constant fields for the bracket comparison.
std::vector<GeneratedField> sample_generated_fields(const TotalSpaceModel& model);

/// Total-space points y = (x, t) over the base points with deterministic small t.
std::vector<Vec> lift_points(const TotalSpaceModel& model, const std::vector<Vec>& base_points, std::uint64_t seed);

struct TotalSpaceOptions {
  double tol = 1e-5;
  double torsion_tol = 1e-6;
  double hypothesis_tol = 1e-6;
  Exec exec = Exec::Parallel;
};

/// Torsion case table vs direct evaluation, nabla-bar T-bar and nabla-bar R-bar.
VerificationReport bar_parallelism_check(const TotalSpaceModel& model, const std::vector<Vec>& base_points,
                                         const TotalSpaceOptions& opt = {}, std::uint64_t seed = 42);

/// A0-vertical part of nabla-bar of A0-horizontal lifts.
VerificationReport distribution_parallel_check(const TotalSpaceModel& model, const ConnectionForm& a0,
                                               const std::vector<Vec>& base_points,
                                               const TotalSpaceOptions& opt = {}, std::uint64_t seed = 42);

}  // namespace ambrose

#pragma once

#include <optional>
#include <vector>

#include "ambrose/bundle.hpp"
#include "ambrose/parallel.hpp"
#include "ambrose/report.hpp"

namespace ambrose {

/// (sigma^(0), ..., sigma^(kmax)) at a point, each entry a tuple of tensors
/// expressed in the orthonormal frame at that point.
struct DerivativeTower {
  Vec point;
  int kmax = 0;
  OrthoFrame frame;
  std::vector<std::vector<DenseTensor>> entries;
};

/// Fields sigma^(0), ..., sigma^(kmax) in the working frame, built by iterating
/// the associated covariant derivative of b0.
std::vector<SectionSpec> tower_fields(const SectionSpec& sigma, const BundleConnection& b0, const Chart& chart,
                                      int kmax);

DerivativeTower build_tower(const SectionSpec& sigma, const BundleConnection& b0, const MetricField& g,
                            const Chart& chart, const Vec& x, int kmax);

/// Same tower in an explicitly given orthonormal frame.
DerivativeTower build_tower(const SectionSpec& sigma, const BundleConnection& b0, const OrthoFrame& frame,
                            const Chart& chart, int kmax);

struct ChainOptions {
  double rel_tol = 1e-8;
  /// Singular values below abs_floor * max(1, tower scale) also count as zero.
  double abs_floor = 1e-6;
  double angle_tol = 1e-6;
};

struct StabilizerChain {
  std::vector<Mat> bases;
  std::vector<int> dims;
  /// Sine-based angles of h(k+1) inside h(k), worst per step.
  std::vector<double> nesting_angles;
  std::optional<int> singer_k;
  bool truncated = false;
  bool ambiguous = false;
};

StabilizerChain stabilizer_chain(const DerivativeTower& tower, const TensorRep& rep, const ChainOptions& opt = {});

/// Builds towers of increasing depth (from 1 up to max_kmax) until the chain
/// stabilizes.
struct ChainAtPoint {
  DerivativeTower tower;
  StabilizerChain chain;
};
ChainAtPoint adaptive_chain(const SectionSpec& sigma, const BundleConnection& b0, const MetricField& g,
                            const Chart& chart, const TensorRep& rep, const Vec& x, int max_kmax = 4,
                            const ChainOptions& opt = {});

/// Norm of a tensor in the orthonormal frame of g at x.
double frame_norm(const DenseTensor& t, const MetricField& g, const Chart& chart, const Vec& x);

/// The triple (g, P -> M, A0).
struct TripleSpec {
  Chart chart;
  MetricField g;
  LinearConnection levi_civita;
  LieAlgebra algebra;
  Mat inner;
  ConnectionForm a0;
};

struct TripleOptions {
  double tol = 1e-5;
  Exec exec = Exec::Parallel;
};

/// nabla R, nabla T, (nabla x nabla^A) F^A, (nabla x nabla^A)(A - A0).
VerificationReport check_lh_triple(const TripleSpec& spec, const LinearConnection& conn, const ConnectionForm& a,
                                   const std::vector<Vec>& points, const TripleOptions& opt = {});

/// nabla^g R^g and (nabla^g x nabla^{A0}) F^{A0}.
VerificationReport check_ls_triple(const TripleSpec& spec, const std::vector<Vec>& points,
                                   const TripleOptions& opt = {});

/// Evaluates {nabla R^g = 0, nabla S = 0} and {nabla R = 0, nabla T = 0} for the
/// metric connection conn = levi_civita + S and reports whether they agree.
VerificationReport equivalence_check_c_c0(const LinearConnection& conn, const MetricField& g,
                                          const LinearConnection& levi_civita, const Chart& chart,
                                          const std::vector<Vec>& points, const TripleOptions& opt = {},
                                          double metric_tol = 1e-7);

/// Metric g as a (0,2) field in the working frame.
TensorField metric_tensor_field(const MetricField& g, const Chart& chart);

/// (R^g, F^{A0}); F is omitted for a trivial structure algebra.
SectionSpec triple_section(const LinearConnection& levi_civita, const ConnectionForm& a0, const Chart& chart);

/// (R^g, P_1, ..., P_k).
SectionSpec kiricenko_section(const LinearConnection& levi_civita, const Chart& chart,
                              const std::vector<TensorField>& extra);

/// (T^{nabla0}, R^{nabla0}).
SectionSpec opozda_section(const LinearConnection& conn0, const Chart& chart);

}  // namespace ambrose

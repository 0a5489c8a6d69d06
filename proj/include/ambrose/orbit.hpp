#pragma once

#include <cstdint>
#include <vector>

#include "ambrose/homogeneity.hpp"

namespace ambrose {

struct OrbitOptions {
  int starts = 16;
  int max_iterations = 500;
  double match_tol = 1e-6;
  double prescreen_tol = 1e-5;
  std::uint64_t seed = 42;
  Exec exec = Exec::Parallel;
};

struct MatchResult {
  bool match = false;
  bool prescreen_failed = false;
  /// Relative residual sqrt(sum ||g.s1 - s2||^2) / sqrt(sum ||s2||^2).
  double residual = 0.0;
  GroupElement element;
  int best_start = -1;
};

/// O(n)-invariants of frame-expressed tensors without lie axes: the
/// norm and, for manifold tensors of even rank, the full pair trace
/// (axes (0, 2), (1, 3), ...), which is scalar curvature for R^l_{kij}.
std::vector<double> entry_invariants(const std::vector<DenseTensor>& entry);

/// Searches g in the identity component with g . sigma1^(i) = sigma2^(i) for i <= depth.
MatchResult orbit_match(const DerivativeTower& t1, const DerivativeTower& t2, const TensorRep& rep, int depth,
                        const OrbitOptions& opt = {});

/// Residual of a given group element.
double match_residual(const GroupElement& g, const DerivativeTower& t1, const DerivativeTower& t2, int depth);

}  // namespace ambrose

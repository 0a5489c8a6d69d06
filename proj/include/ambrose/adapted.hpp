#pragma once

#include "ambrose/homogeneity.hpp"

namespace ambrose {

/// Everything the projection construction needs: the section, the reference
/// connection b0 used for its tower, a connection bprime making the tower
/// entries parallel, and the ad-invariant inner product on so(n) + k.
struct AdaptedSetup {
  SectionSpec sigma;
  BundleConnection b0;
  BundleConnection bprime;
  MetricField g;
  Chart chart;
  TensorRep rep;
  Mat inner;
  ChainOptions chain{};
  int max_kmax = 4;
};

/// Block-diagonal inner product: default on so(n), `inner_k` on k.
Mat frame_inner(int n, const Mat& inner_k);

struct AdaptedPoint {
  StabilizerChain chain;
  /// (b - b0) at the point: endomorphism part (Contra, Co, Co) and form part (Co, Lie).
  DenseTensor endo;
  DenseTensor lie;
};

/// Splits bprime - b0 at x into h(singer + 1) and its invariant complement,
/// keeping the complement part.
AdaptedPoint adapted_decomposition(const AdaptedSetup& setup, const Vec& x);

/// b = b0 + (bprime - b0)_k as a connection (evaluated pointwise).
BundleConnection adapted_connection(const AdaptedSetup& setup);

/// nabla^b sigma^(k) for k <= singer + 1 and (nabla^b x nabla^b_ad)(b - b0).
VerificationReport adapted_report(const AdaptedSetup& setup, const std::vector<Vec>& points, double tol = 1e-5,
                                  Exec exec = Exec::Parallel);

}  // namespace ambrose

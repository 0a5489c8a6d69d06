#pragma once

#include "ambrose/tensor.hpp"

namespace ambrose {

/// Orthonormal frame at a point. Columns of `frame` are the frame vectors
/// written in the chart's working basis; `coframe` is its inverse.
struct OrthoFrame {
  Vec point;
  Mat frame;
  Mat coframe;
};

/// Frame from the lower Cholesky factor G = L L^T: frame = L^{-T}, coframe = L^T.
OrthoFrame cholesky_frame(const Vec& point, const Mat& metric);

/// Orthonormal frame rotated by an orthogonal matrix (frame * q).
OrthoFrame rotated(const OrthoFrame& f, const Mat& q);

/// Re-expresses manifold axes in the frame basis. Lie axes are untouched.
DenseTensor to_frame(const DenseTensor& t, const OrthoFrame& f);

DenseTensor from_frame(const DenseTensor& t, const OrthoFrame& f);

/// Same as to_frame but with an arbitrary invertible basis change.
DenseTensor change_basis(const DenseTensor& t, const Mat& frame, const Mat& coframe);

}  // namespace ambrose

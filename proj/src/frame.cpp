#include "ambrose/frame.hpp"

namespace ambrose {

OrthoFrame cholesky_frame(const Vec& point, const Mat& metric) {
  Eigen::LLT<Mat> llt(metric);
  if (llt.info() != Eigen::Success) {
    throw GeometryError(ErrorCode::DegenerateMetric, "Cholesky factorization failed");
  }
  const Mat l = llt.matrixL();
  OrthoFrame f;
  f.point = point;
  f.coframe = l.transpose();
  f.frame = f.coframe.triangularView<Eigen::Upper>().solve(Mat::Identity(l.rows(), l.cols()));
  if (!f.frame.allFinite()) throw GeometryError(ErrorCode::SingularFrame, "frame not finite");
  return f;
}

OrthoFrame rotated(const OrthoFrame& f, const Mat& q) {
  OrthoFrame out;
  out.point = f.point;
  out.frame = f.frame * q;
  out.coframe = q.transpose() * f.coframe;
  return out;
}

DenseTensor change_basis(const DenseTensor& t, const Mat& frame, const Mat& coframe) {
  if (!frame.allFinite() || !coframe.allFinite()) {
    throw GeometryError(ErrorCode::SingularFrame, "basis change not finite");
  }
  DenseTensor out = t;
  const Mat frame_t = frame.transpose();
  for (int a = 0; a < t.rank(); ++a) {
    if (t.axes()[a] == Axis::Contra) {
      out = apply_axis_matrix(out, a, coframe);
    } else if (t.axes()[a] == Axis::Co) {
      out = apply_axis_matrix(out, a, frame_t);
    }
  }
  return out;
}

DenseTensor to_frame(const DenseTensor& t, const OrthoFrame& f) {
  return change_basis(t, f.frame, f.coframe);
}

DenseTensor from_frame(const DenseTensor& t, const OrthoFrame& f) {
  return change_basis(t, f.coframe, f.frame);
}

}  // namespace ambrose

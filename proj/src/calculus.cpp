#include "ambrose/calculus.hpp"

#include <cmath>
#include <string>

namespace ambrose {

namespace {

DenseTensor matrix_tensor(const Mat& m) {
  std::vector<double> data(static_cast<std::size_t>(m.size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) data[i * m.cols() + j] = m(i, j);
  return DenseTensor({Axis::Contra, Axis::Co}, {static_cast<int>(m.rows()), static_cast<int>(m.cols())},
                     std::move(data));
}

Mat tensor_matrix(const DenseTensor& t) {
  Mat m(t.dims()[0], t.dims()[1]);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = t.data()[i * m.cols() + j];
  return m;
}

Mat matrix_directional(const MatrixEval& f, const Chart& chart, const Vec& x, const Vec& dir) {
  return tensor_matrix(fd_directional([&f](const Vec& y) { return matrix_tensor(f(y)); }, chart, x, dir));
}

}  // namespace

Chart::Chart(Vec lo, Vec hi, double margin, double step_scale)
    : Chart(std::move(lo), std::move(hi), margin, FrameField{}, step_scale) {}

Chart::Chart(Vec lo, Vec hi, double margin, FrameField frame, double step_scale)
    : lo_(std::move(lo)), hi_(std::move(hi)), margin_(margin), step_scale_(step_scale), frame_(std::move(frame)) {
  if (lo_.size() == 0 || lo_.size() != hi_.size()) {
    throw GeometryError(ErrorCode::BadParameters, "chart bounds have inconsistent dimension");
  }
  for (int i = 0; i < lo_.size(); ++i) {
    if (!(lo_[i] < hi_[i])) throw GeometryError(ErrorCode::BadParameters, "empty chart interval");
  }
  if (!(margin_ > 0.0)) throw GeometryError(ErrorCode::BadParameters, "chart margin must be positive");
  if (!frame_.holonomic && !frame_.vectors) {
    throw GeometryError(ErrorCode::BadParameters, "moving frame without frame vectors");
  }
}

bool Chart::inside(const Vec& x) const {
  for (int i = 0; i < dim(); ++i) {
    if (x[i] < lo_[i] || x[i] > hi_[i]) return false;
  }
  return true;
}

bool Chart::inside_margin(const Vec& x) const {
  for (int i = 0; i < dim(); ++i) {
    if (x[i] < lo_[i] + margin_ || x[i] > hi_[i] - margin_) return false;
  }
  return true;
}

Mat Chart::frame_at(const Vec& x) const {
  if (frame_.holonomic) return Mat::Identity(dim(), dim());
  return frame_.vectors(x);
}

DenseTensor Chart::structure_at(const Vec& x) const {
  const int n = dim();
  if (frame_.holonomic) return DenseTensor({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n});
  if (frame_.structure) return frame_.structure(x);
  const Mat e = frame_at(x);
  const Mat e_inv = e.inverse();
  std::vector<Mat> d_cols(n);  // d_cols[a] = directional derivative of the whole frame along E_a
  for (int a = 0; a < n; ++a) d_cols[a] = matrix_directional(frame_.vectors, *this, x, e.col(a));
  DenseTensor c({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n});
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Vec bracket = d_cols[a].col(b) - d_cols[b].col(a);
      const Vec coeff = e_inv * bracket;
      for (int k = 0; k < n; ++k) c.at({k, a, b}) = coeff[k];
    }
  }
  return c;
}

Chart Chart::coordinate_chart() const { return Chart(lo_, hi_, margin_, step_scale_); }

Chart Chart::with_step_scale(double step_scale) const {
  return Chart(lo_, hi_, margin_, frame_, step_scale);
}

DenseTensor TensorField::operator()(const Vec& x) const { return eval(x); }

TensorField make_field(std::vector<Axis> axes, std::vector<int> dims, TensorEval eval) {
  return TensorField{std::move(axes), std::move(dims), std::move(eval), {}};
}

Mat frame_metric(const MetricField& g, const Chart& chart, const Vec& x) {
  const Mat e = chart.frame_at(x);
  return e.transpose() * g(x) * e;
}

OrthoFrame ortho_frame(const MetricField& g, const Chart& chart, const Vec& x) {
  return cholesky_frame(x, frame_metric(g, chart, x));
}

LinearConnection zero_connection(int n) {
  return LinearConnection{[n](const Vec&) { return DenseTensor({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n}); },
                          true};
}

double fd_step(const Chart& chart, const Vec& dir) {
  double s = 0.0;
  for (int i = 0; i < chart.dim(); ++i) s = std::max(s, std::abs(dir[i]) / (chart.hi()[i] - chart.lo()[i]));
  if (s == 0.0) throw GeometryError(ErrorCode::OutOfDomain, "zero differentiation direction");
  return chart.step_scale() / s;
}

DenseTensor fd_central(const TensorEval& f, const Chart& chart, const Vec& x, const Vec& dir, double h) {
  const Vec xp = x + h * dir;
  const Vec xm = x - h * dir;
  if (!chart.inside(xp) || !chart.inside(xm)) {
    throw GeometryError(ErrorCode::OutOfDomain, "finite-difference stencil leaves the chart");
  }
  DenseTensor d = f(xp);
  d -= f(xm);
  d *= 1.0 / (2.0 * h);
  return d;
}

DenseTensor fd_directional(const TensorEval& f, const Chart& chart, const Vec& x, const Vec& dir) {
  const double h = fd_step(chart, dir);
  DenseTensor coarse = fd_central(f, chart, x, dir, h);
  DenseTensor fine = fd_central(f, chart, x, dir, 0.5 * h);
  fine *= 4.0 / 3.0;
  coarse *= 1.0 / 3.0;
  fine -= coarse;
  return fine;
}

DenseTensor fd_partial(const TensorField& field, const Chart& chart, const Vec& x, int mu) {
  Vec dir = Vec::Zero(chart.dim());
  dir[mu] = 1.0;
  return fd_directional(field.eval, chart, x, dir);
}

DenseTensor frame_gradient(const TensorField& field, const Chart& chart, const Vec& x) {
  if (field.frame_gradient) return field.frame_gradient(x);
  const Mat e = chart.frame_at(x);
  std::vector<DenseTensor> slices;
  slices.reserve(chart.dim());
  for (int a = 0; a < chart.dim(); ++a) slices.push_back(fd_directional(field.eval, chart, x, e.col(a)));
  return stack_leading(Axis::Co, slices);
}

DenseTensor christoffel(const MetricField& g, const Chart& chart, const Vec& x) {
  const int n = chart.dim();
  const Mat gx = g(x);
  Eigen::LLT<Mat> llt(gx);
  if (llt.info() != Eigen::Success) throw GeometryError(ErrorCode::DegenerateMetric, "metric not positive definite");
  const Mat g_inv = llt.solve(Mat::Identity(n, n));
  std::vector<Mat> dg(n);
  for (int i = 0; i < n; ++i) {
    Vec dir = Vec::Zero(n);
    dir[i] = 1.0;
    dg[i] = matrix_directional(g.eval, chart, x, dir);
  }
  DenseTensor gamma({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += g_inv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma.at({k, i, j}) = 0.5 * acc;
      }
  return gamma;
}

LinearConnection levi_civita(const MetricField& g, const Chart& chart) {
  if (chart.holonomic()) {
    return LinearConnection{[g, chart](const Vec& x) { return christoffel(g, chart, x); }, true};
  }
  return LinearConnection{[g, chart](const Vec& x) {
                            return coordinate_to_frame(christoffel(g, chart.coordinate_chart(), x), chart, x);
                          },
                          false};
}

void add_connection_terms(DenseTensor& grad, const DenseTensor& coeffs, const DenseTensor& t) {
  const int n = coeffs.dims()[0];
  const std::size_t block = t.size();
  for (int a = 0; a < n; ++a) {
    Mat m(n, n);
    for (int c = 0; c < n; ++c)
      for (int b = 0; b < n; ++b) m(c, b) = coeffs.at({c, a, b});
    const Mat mt = -m.transpose();
    DenseTensor corr(t.axes(), t.dims());
    for (int p = 0; p < t.rank(); ++p) {
      if (t.axes()[p] == Axis::Contra) {
        if (t.dims()[p] != n) throw GeometryError(ErrorCode::AxisMismatch, "manifold axis dim != n");
        corr += apply_axis_matrix(t, p, m);
      } else if (t.axes()[p] == Axis::Co) {
        if (t.dims()[p] != n) throw GeometryError(ErrorCode::AxisMismatch, "manifold axis dim != n");
        corr += apply_axis_matrix(t, p, mt);
      }
    }
    for (std::size_t i = 0; i < block; ++i) grad.data()[a * block + i] += corr.data()[i];
  }
}

DenseTensor covariant_derivative(const LinearConnection& conn, const TensorField& t, const Chart& chart,
                                 const Vec& x) {
  for (Axis a : t.axes) {
    if (a == Axis::Lie) throw GeometryError(ErrorCode::AxisMismatch, "lie axis needs a bundle connection");
  }
  DenseTensor grad = frame_gradient(t, chart, x);
  add_connection_terms(grad, conn(x), t(x));
  return grad;
}

TensorField covariant_derivative_field(const LinearConnection& conn, TensorField t, const Chart& chart) {
  std::vector<Axis> axes{Axis::Co};
  axes.insert(axes.end(), t.axes.begin(), t.axes.end());
  std::vector<int> dims{chart.dim()};
  dims.insert(dims.end(), t.dims.begin(), t.dims.end());
  return make_field(axes, dims, [conn, t = std::move(t), chart](const Vec& x) {
    return covariant_derivative(conn, t, chart, x);
  });
}

DenseTensor curvature(const LinearConnection& conn, const Chart& chart, const Vec& x) {
  const int n = chart.dim();
  const TensorField coeff_field = make_field({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n}, conn.coeffs);
  const DenseTensor dw = frame_gradient(coeff_field, chart, x);  // (a, e, b, c) = E_a(w^e_{bc})
  const DenseTensor w = conn(x);
  const DenseTensor c = chart.structure_at(x);
  DenseTensor r({Axis::Contra, Axis::Co, Axis::Co, Axis::Co}, {n, n, n, n});
  for (int e = 0; e < n; ++e)
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          double v = dw.at({a, e, b, k}) - dw.at({b, e, a, k});
          for (int d = 0; d < n; ++d) {
            v += w.at({e, a, d}) * w.at({d, b, k}) - w.at({e, b, d}) * w.at({d, a, k});
            v -= c.at({d, a, b}) * w.at({e, d, k});
          }
          r.at({e, k, a, b}) = v;
        }
  return r;
}

DenseTensor torsion(const LinearConnection& conn, const Chart& chart, const Vec& x) {
  const int n = chart.dim();
  const DenseTensor w = conn(x);
  const DenseTensor c = chart.structure_at(x);
  DenseTensor t({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.at({k, i, j}) = w.at({k, i, j}) - w.at({k, j, i}) - c.at({k, i, j});
  return t;
}

TensorField curvature_field(const LinearConnection& conn, const Chart& chart) {
  const int n = chart.dim();
  return make_field({Axis::Contra, Axis::Co, Axis::Co, Axis::Co}, {n, n, n, n},
                    [conn, chart](const Vec& x) { return curvature(conn, chart, x); });
}

TensorField torsion_field(const LinearConnection& conn, const Chart& chart) {
  const int n = chart.dim();
  return make_field({Axis::Contra, Axis::Co, Axis::Co}, {n, n, n},
                    [conn, chart](const Vec& x) { return torsion(conn, chart, x); });
}

TensorField lowered_curvature_field(const LinearConnection& conn, const MetricField& g, const Chart& chart) {
  const int n = chart.dim();
  return make_field({Axis::Co, Axis::Co, Axis::Co, Axis::Co}, {n, n, n, n}, [conn, g, chart](const Vec& x) {
    return lower_first(curvature(conn, chart, x), frame_metric(g, chart, x));
  });
}

DenseTensor difference_torsion(const DenseTensor& s) {
  if (s.rank() != 3 || s.axes()[0] != Axis::Contra || s.axes()[1] != Axis::Co || s.axes()[2] != Axis::Co) {
    throw GeometryError(ErrorCode::AxisMismatch, "difference tensor must have valence (1,2)");
  }
  const int n = s.dims()[0];
  DenseTensor t(s.axes(), s.dims());
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t.at({k, i, j}) = s.at({k, i, j}) - s.at({k, j, i});
  return t;
}

LinearConnection connection_difference(const LinearConnection& a, const LinearConnection& b) {
  return LinearConnection{[a, b](const Vec& x) { return a(x) - b(x); }, false};
}

LinearConnection connection_sum(const LinearConnection& a, const TensorEval& s) {
  return LinearConnection{[a, s](const Vec& x) { return a(x) + s(x); }, false};
}

DenseTensor frame_to_coordinate(const LinearConnection& conn, const Chart& chart, const Vec& x) {
  const int n = chart.dim();
  const Mat e = chart.frame_at(x);
  Eigen::FullPivLU<Mat> lu(e);
  if (!lu.isInvertible()) throw GeometryError(ErrorCode::SingularFrame, "frame not invertible");
  const Mat e_inv = lu.inverse();
  const DenseTensor w = conn(x);
  DenseTensor gamma = change_basis(w, e_inv, e);
  if (!chart.holonomic()) {
    std::vector<Mat> de(n);  // de[i] = d_i E
    for (int i = 0; i < n; ++i) {
      Vec dir = Vec::Zero(n);
      dir[i] = 1.0;
      de[i] = matrix_directional(chart.frame_field().vectors, chart, x, dir);
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gamma.at({k, i, j}) -= (de[i] * e_inv)(k, j);
  }
  return gamma;
}

DenseTensor coordinate_to_frame(const DenseTensor& gamma, const Chart& chart, const Vec& x) {
  const int n = chart.dim();
  const Mat e = chart.frame_at(x);
  Eigen::FullPivLU<Mat> lu(e);
  if (!lu.isInvertible()) throw GeometryError(ErrorCode::SingularFrame, "frame not invertible");
  const Mat e_inv = lu.inverse();
  DenseTensor w = change_basis(gamma, e, e_inv);
  if (!chart.holonomic()) {
    for (int a = 0; a < n; ++a) {
      const Mat de = matrix_directional(chart.frame_field().vectors, chart, x, e.col(a));  // E_a(E)
      const Mat proj = e_inv * de;
      for (int c = 0; c < n; ++c)
        for (int b = 0; b < n; ++b) w.at({c, a, b}) += proj(c, b);
    }
  }
  return w;
}

LinearConnection coordinate_connection(const LinearConnection& conn, const Chart& chart) {
  return LinearConnection{[conn, chart](const Vec& x) { return frame_to_coordinate(conn, chart, x); },
                          conn.symmetric_hint};
}

TensorField to_coordinates(const TensorField& t, const Chart& chart) {
  TensorField out = t;
  out.frame_gradient = {};
  out.eval = [t, chart](const Vec& x) {
    const Mat e = chart.frame_at(x);
    return change_basis(t(x), e.inverse(), e);
  };
  return out;
}

}  // namespace ambrose

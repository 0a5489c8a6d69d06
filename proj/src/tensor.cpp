#include "ambrose/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ambrose {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AxisMismatch: return "AxisMismatch";
    case ErrorCode::SingularFrame: return "SingularFrame";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::RepMismatch: return "RepMismatch";
    case ErrorCode::NotSubalgebra: return "NotSubalgebra";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotReductive: return "NotReductive";
    case ErrorCode::DepthMismatch: return "DepthMismatch";
    case ErrorCode::NotMetric: return "NotMetric";
    case ErrorCode::UnsupportedFieldKind: return "UnsupportedFieldKind";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace {

std::size_t product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         [](std::size_t a, int d) { return a * static_cast<std::size_t>(d); });
}

}  // namespace

DenseTensor::DenseTensor(std::vector<Axis> axes, std::vector<int> dims)
    : axes_(std::move(axes)), dims_(std::move(dims)) {
  if (axes_.size() != dims_.size()) {
    throw GeometryError(ErrorCode::AxisMismatch, "axis markers and dims differ in length");
  }
  for (int d : dims_) {
    if (d <= 0) throw GeometryError(ErrorCode::AxisMismatch, "non-positive axis dimension");
  }
  data_.assign(product(dims_), 0.0);
}

DenseTensor::DenseTensor(std::vector<Axis> axes, std::vector<int> dims, std::vector<double> data)
    : DenseTensor(std::move(axes), std::move(dims)) {
  if (data.size() != data_.size()) {
    throw GeometryError(ErrorCode::AxisMismatch,
                        "component count " + std::to_string(data.size()) + " != " +
                            std::to_string(data_.size()));
  }
  data_ = std::move(data);
}

DenseTensor DenseTensor::scalar(double value) { return DenseTensor({}, {}, {value}); }

std::size_t DenseTensor::stride(int axis) const {
  std::size_t s = 1;
  for (int a = rank() - 1; a > axis; --a) s *= static_cast<std::size_t>(dims_[a]);
  return s;
}

double& DenseTensor::operator()(std::span<const int> index) {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < index.size(); ++a) flat = flat * dims_[a] + index[a];
  return data_[flat];
}

double DenseTensor::operator()(std::span<const int> index) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < index.size(); ++a) flat = flat * dims_[a] + index[a];
  return data_[flat];
}

double& DenseTensor::at(std::initializer_list<int> index) {
  return (*this)(std::span<const int>(index.begin(), index.size()));
}

double DenseTensor::at(std::initializer_list<int> index) const {
  return (*this)(std::span<const int>(index.begin(), index.size()));
}

bool DenseTensor::same_shape(const DenseTensor& other) const {
  return axes_ == other.axes_ && dims_ == other.dims_;
}

DenseTensor& DenseTensor::operator+=(const DenseTensor& other) {
  if (!same_shape(other)) throw GeometryError(ErrorCode::AxisMismatch, "shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator-=(const DenseTensor& other) {
  if (!same_shape(other)) throw GeometryError(ErrorCode::AxisMismatch, "shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

DenseTensor& DenseTensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

double DenseTensor::norm() const {
  double acc = 0.0;
  for (double v : data_) acc += v * v;
  return std::sqrt(acc);
}

double DenseTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
DenseTensor operator-(DenseTensor a, const DenseTensor& b) { return a -= b; }
DenseTensor operator*(double s, DenseTensor a) { return a *= s; }

DenseTensor contract(const DenseTensor& t, int axis_a, int axis_b, const Mat* lie_metric) {
  if (axis_a == axis_b || axis_a < 0 || axis_b < 0 || axis_a >= t.rank() || axis_b >= t.rank()) {
    throw GeometryError(ErrorCode::AxisMismatch, "invalid contraction axes");
  }
  const Axis ma = t.axes()[axis_a];
  const Axis mb = t.axes()[axis_b];
  const bool mixed = (ma == Axis::Contra && mb == Axis::Co) || (ma == Axis::Co && mb == Axis::Contra);
  const bool lie = ma == Axis::Lie && mb == Axis::Lie && lie_metric != nullptr;
  if (!mixed && !lie) throw GeometryError(ErrorCode::AxisMismatch, "incompatible axis markers");
  const int d = t.dims()[axis_a];
  if (t.dims()[axis_b] != d) throw GeometryError(ErrorCode::AxisMismatch, "contracted dims differ");
  if (lie && (lie_metric->rows() != d || lie_metric->cols() != d)) {
    throw GeometryError(ErrorCode::AxisMismatch, "lie metric has wrong size");
  }

  std::vector<Axis> axes;
  std::vector<int> dims;
  for (int a = 0; a < t.rank(); ++a) {
    if (a == axis_a || a == axis_b) continue;
    axes.push_back(t.axes()[a]);
    dims.push_back(t.dims()[a]);
  }
  DenseTensor out(axes, dims);

  std::vector<int> full(t.rank(), 0);
  std::vector<int> rest(out.rank(), 0);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::size_t rem = flat;
    for (int a = out.rank() - 1; a >= 0; --a) {
      rest[a] = static_cast<int>(rem % out.dims()[a]);
      rem /= out.dims()[a];
    }
    for (int a = 0, r = 0; a < t.rank(); ++a) {
      if (a == axis_a || a == axis_b) continue;
      full[a] = rest[r++];
    }
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
      full[axis_a] = i;
      if (lie) {
        for (int j = 0; j < d; ++j) {
          full[axis_b] = j;
          acc += (*lie_metric)(i, j) * t(full);
        }
      } else {
        full[axis_b] = i;
        acc += t(full);
      }
    }
    out.data()[flat] = acc;
  }
  return out;
}

DenseTensor apply_axis_matrix(const DenseTensor& t, int axis, const Mat& m) {
  const int d = t.dims()[axis];
  if (m.cols() != d) throw GeometryError(ErrorCode::AxisMismatch, "matrix does not fit axis");
  std::vector<int> dims = t.dims();
  dims[axis] = static_cast<int>(m.rows());
  DenseTensor out(t.axes(), dims);
  const std::size_t inner = t.stride(axis);
  const std::size_t outer = t.size() / (inner * d);
  const int d_out = static_cast<int>(m.rows());
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t r = 0; r < inner; ++r) {
      const double* src = t.data().data() + o * d * inner + r;
      double* dst = out.data().data() + o * d_out * inner + r;
      for (int i = 0; i < d_out; ++i) {
        double acc = 0.0;
        for (int j = 0; j < d; ++j) acc += m(i, j) * src[j * inner];
        dst[i * inner] = acc;
      }
    }
  }
  return out;
}

DenseTensor outer(const DenseTensor& a, const DenseTensor& b) {
  std::vector<Axis> axes = a.axes();
  axes.insert(axes.end(), b.axes().begin(), b.axes().end());
  std::vector<int> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  DenseTensor out(axes, dims);
  std::size_t k = 0;
  for (double x : a.data()) {
    for (double y : b.data()) out.data()[k++] = x * y;
  }
  return out;
}

DenseTensor move_axis(const DenseTensor& t, int from, int to) {
  if (from == to) return t;
  std::vector<int> perm(t.rank());
  std::iota(perm.begin(), perm.end(), 0);
  perm.erase(perm.begin() + from);
  perm.insert(perm.begin() + to, from);
  std::vector<Axis> axes;
  std::vector<int> dims;
  for (int p : perm) {
    axes.push_back(t.axes()[p]);
    dims.push_back(t.dims()[p]);
  }
  DenseTensor out(axes, dims);
  std::vector<int> idx_out(t.rank());
  std::vector<int> idx_in(t.rank());
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::size_t rem = flat;
    for (int a = t.rank() - 1; a >= 0; --a) {
      idx_out[a] = static_cast<int>(rem % dims[a]);
      rem /= dims[a];
    }
    for (int a = 0; a < t.rank(); ++a) idx_in[perm[a]] = idx_out[a];
    out.data()[flat] = t(idx_in);
  }
  return out;
}

DenseTensor stack_leading(Axis marker, const std::vector<DenseTensor>& slices) {
  if (slices.empty()) throw GeometryError(ErrorCode::AxisMismatch, "nothing to stack");
  std::vector<Axis> axes{marker};
  axes.insert(axes.end(), slices.front().axes().begin(), slices.front().axes().end());
  std::vector<int> dims{static_cast<int>(slices.size())};
  dims.insert(dims.end(), slices.front().dims().begin(), slices.front().dims().end());
  DenseTensor out(axes, dims);
  const std::size_t block = slices.front().size();
  for (std::size_t i = 0; i < slices.size(); ++i) {
    if (!slices[i].same_shape(slices.front())) {
      throw GeometryError(ErrorCode::AxisMismatch, "stacked slices differ in shape");
    }
    std::copy(slices[i].data().begin(), slices[i].data().end(), out.data().begin() + i * block);
  }
  return out;
}

DenseTensor leading_slice(const DenseTensor& t, int i) {
  std::vector<Axis> axes(t.axes().begin() + 1, t.axes().end());
  std::vector<int> dims(t.dims().begin() + 1, t.dims().end());
  DenseTensor out(axes, dims);
  const std::size_t block = out.size();
  std::copy(t.data().begin() + i * block, t.data().begin() + (i + 1) * block, out.data().begin());
  return out;
}

DenseTensor lower_first(const DenseTensor& t, const Mat& metric) {
  if (t.rank() == 0 || t.axes()[0] != Axis::Contra) {
    throw GeometryError(ErrorCode::AxisMismatch, "leading axis is not contravariant");
  }
  DenseTensor out = apply_axis_matrix(t, 0, metric);
  std::vector<Axis> axes = out.axes();
  axes[0] = Axis::Co;
  return DenseTensor(axes, out.dims(), std::move(out.data()));
}

}  // namespace ambrose

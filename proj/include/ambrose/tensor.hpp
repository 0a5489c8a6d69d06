#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <span>
#include <vector>

#include "ambrose/errors.hpp"

namespace ambrose {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Axis marker of a tensor slot. Manifold axes (contravariant/covariant) are
/// expressed in whatever frame the producing chart works in; lie-adjoint axes
/// carry coefficients in the basis of a structure Lie algebra.
enum class Axis { Contra, Co, Lie };

/// Dense multi-index tensor at a point, row-major over `dims`.
class DenseTensor {
 public:
  DenseTensor() = default;
  DenseTensor(std::vector<Axis> axes, std::vector<int> dims);
  DenseTensor(std::vector<Axis> axes, std::vector<int> dims, std::vector<double> data);

  static DenseTensor scalar(double value);

  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  int rank() const { return static_cast<int>(axes_.size()); }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::span<const int> index);
  double operator()(std::span<const int> index) const;
  double& at(std::initializer_list<int> index);
  double at(std::initializer_list<int> index) const;

  std::size_t stride(int axis) const;

  bool same_shape(const DenseTensor& other) const;

  DenseTensor& operator+=(const DenseTensor& other);
  DenseTensor& operator-=(const DenseTensor& other);
  DenseTensor& operator*=(double s);

  double norm() const;
  double max_abs() const;

 private:
  std::vector<Axis> axes_;
  std::vector<int> dims_;
  std::vector<double> data_;
};

DenseTensor operator+(DenseTensor a, const DenseTensor& b);
DenseTensor operator-(DenseTensor a, const DenseTensor& b);
DenseTensor operator*(double s, DenseTensor a);

/// Single contraction of a contravariant axis against a covariant axis. Two
/// lie-adjoint axes may be contracted when `lie_metric` is supplied.
DenseTensor contract(const DenseTensor& t, int axis_a, int axis_b, const Mat* lie_metric = nullptr);

/// t'[.., i, ..] = sum_j m(i, j) t[.., j, ..] on the given axis.
DenseTensor apply_axis_matrix(const DenseTensor& t, int axis, const Mat& m);

/// Outer product, axes of `a` first.
DenseTensor outer(const DenseTensor& a, const DenseTensor& b);

/// Moves axis `from` to position `to` (other axes keep their relative order).
DenseTensor move_axis(const DenseTensor& t, int from, int to);

/// Stacks tensors of identical shape along a new leading axis with the given marker.
DenseTensor stack_leading(Axis marker, const std::vector<DenseTensor>& slices);

/// Slice of the leading axis at position i.
DenseTensor leading_slice(const DenseTensor& t, int i);

/// Lowers the leading contravariant axis with a frame metric.
DenseTensor lower_first(const DenseTensor& t, const Mat& metric);

}  // namespace ambrose

#pragma once

#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "ambrose/errors.hpp"
#include "ambrose/calculus.hpp"

inline bool fails_with(const std::function<void()>& f, ambrose::ErrorCode code) {
  try {
    f();
  } catch (const ambrose::GeometryError& e) {
    return e.code() == code;
  }
  return false;
}

inline ambrose::Vec point(std::initializer_list<double> v) {
  ambrose::Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline ambrose::TensorEval wave(std::vector<ambrose::Axis> axes, std::vector<int> dims, double phase) {
  return [axes, dims, phase](const ambrose::Vec& x) {
    ambrose::DenseTensor t(axes, dims);
    for (std::size_t i = 0; i < t.size(); ++i) {
      double s = phase + 0.53 * static_cast<double>(i);
      for (Eigen::Index mu = 0; mu < x.size(); ++mu) s += (0.2 + 0.13 * ((i + 2 * mu) % 4)) * x[mu];
      t.data()[i] = 0.4 * std::cos(s) + 0.15 * std::sin(0.7 * s - x[0]);
    }
    return t;
  };
}

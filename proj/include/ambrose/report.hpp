#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ambrose/tensor.hpp"

namespace ambrose {

struct VerificationReport {
  std::string scenario;
  std::string fixture;
  std::map<std::string, double> params;
  std::vector<Vec> points;
  std::map<std::string, double> residuals;
  std::map<std::string, double> tolerances;
  std::vector<int> stabilizer_dims;
  std::optional<int> singer_k;
  bool pass = false;
  std::vector<std::string> flags;
  std::optional<std::string> error;

  void set(const std::string& name, double value, double tol) {
    residuals[name] = value;
    tolerances[name] = tol;
  }
  void flag(const std::string& f);
  /// pass = every residual with a tolerance is below it (and no error).
  void finalize();
};

/// Round to 12 significant digits (the serialized precision).
double round12(double v);

/// Single JSON document with sorted keys and fixed float formatting.
std::string to_json(const VerificationReport& r);

/// Quasi-random interior points: a Halton sequence with a seeded
/// Cranley-Patterson rotation, mapped into [lo + margin, hi - margin].
std::vector<Vec> sample_points(const Vec& lo, const Vec& hi, double margin, int count, std::uint64_t seed);

}  // namespace ambrose

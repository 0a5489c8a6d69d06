#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ambrose/fixtures.hpp"
#include "ambrose/parallel.hpp"
#include "ambrose/report.hpp"

namespace ambrose {

struct RunConfig {
  std::string scenario;
  std::string fixture;
  Params params;
  int points = 8;
  std::vector<Vec> explicit_points;
  std::uint64_t seed = 42;
  /// "default" sets the base tolerance of the scenario; other keys override
  /// the tolerance of the residual with that name.
  std::map<std::string, double> tol;
  int kmax = 4;
  std::string out;
  Exec exec = Exec::Parallel;
};

std::vector<std::string> scenario_names();

/// Reads a JSON config. Throws ConfigError on unknown keys or bad types.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

/// Sample points of the run (explicit list or quasi-random interior points).
std::vector<Vec> run_points(const RunConfig& config, const Fixture& fixture);

/// Runs the scenario. Config problems throw GeometryError with ConfigError,
/// UnknownFixture or BadParameters; numerical failures propagate.
VerificationReport run(const RunConfig& config);

struct RunOutcome {
  int exit_code = 0;
  /// Empty on configuration errors.
  std::string json;
  std::string message;
};

/// run() with exit codes: 0 pass, 1 fail, 2 configuration error,
/// 3 numerical failure (partial report carrying "error").
RunOutcome execute(const RunConfig& config);

/// Scenario building blocks, exposed for tests and benchmarks.
VerificationReport identity_report(const Fixture& f, const std::vector<Vec>& points, double tol, Exec exec);
VerificationReport selftest_report(const Fixture& f, const std::vector<Vec>& points, double tol, Exec exec);
VerificationReport singer_report(const Fixture& f, const std::vector<Vec>& points, int kmax, double tol, Exec exec);

}  // namespace ambrose

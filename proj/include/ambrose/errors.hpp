#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ambrose {

enum class ErrorCode {
  AxisMismatch,
  SingularFrame,
  OutOfDomain,
  DegenerateMetric,
  RepMismatch,
  NotSubalgebra,
  NotInvariant,
  NotReductive,
  DepthMismatch,
  NotMetric,
  UnsupportedFieldKind,
  UnknownFixture,
  BadParameters,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ambrose

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hessdist {

// Every failure the library can raise. The numeric values are stable: the
// command-line tool derives its exit codes from them.
enum class ErrorCode : int {
  InvalidArgument = 1,
  TooFewNodes,
  NonPositiveDensity,
  NotNormalizable,
  TooFewSamples,
  DegenerateSamples,
  InvalidGamma,
  NonConvex,
  DomainError,
  QuadratureDivergence,
  HInversionOutOfRange,
  NotMeanZero,
  PerturbedDensityInvalid,
  FileNotFound,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hessdist

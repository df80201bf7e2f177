#include "hessdist/error.hpp"

namespace hessdist {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TooFewNodes: return "TooFewNodes";
    case ErrorCode::NonPositiveDensity: return "NonPositiveDensity";
    case ErrorCode::NotNormalizable: return "NotNormalizable";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::DegenerateSamples: return "DegenerateSamples";
    case ErrorCode::InvalidGamma: return "InvalidGamma";
    case ErrorCode::NonConvex: return "NonConvex";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::QuadratureDivergence: return "QuadratureDivergence";
    case ErrorCode::HInversionOutOfRange: return "HInversionOutOfRange";
    case ErrorCode::NotMeanZero: return "NotMeanZero";
    case ErrorCode::PerturbedDensityInvalid: return "PerturbedDensityInvalid";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace hessdist

#include "etea/error.hpp"

namespace etea {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::OutOfBounds: return "out_of_bounds";
    case ErrorCode::Ordering: return "order";
    case ErrorCode::Configuration: return "config";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Protocol: return "protocol";
    case ErrorCode::Structural: return "structural";
    case ErrorCode::UndefinedCorrelation: return "undefined_correlation";
    case ErrorCode::Integrity: return "integrity";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace etea

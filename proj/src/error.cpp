#include "fockmult/error.hpp"

namespace fockmult {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidElement: return "invalid-element";
    case ErrorCode::UnsupportedOperation: return "unsupported-operation";
    case ErrorCode::Capacity: return "capacity";
    case ErrorCode::OutOfWindow: return "out-of-window";
    case ErrorCode::IncompatibleWindow: return "incompatible-window";
    case ErrorCode::TruncationOverflow: return "truncation-overflow";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Shape: return "shape";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::InvariantViolation: return "invariant-violation";
  }
  return "unknown";
}

}  // namespace fockmult

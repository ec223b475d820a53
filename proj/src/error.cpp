#include "abundle/error.hpp"

namespace abundle {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::DomainEscape: return "DomainEscape";
    case ErrorCode::MalformedIdempotent: return "MalformedIdempotent";
    case ErrorCode::ModuleMismatch: return "ModuleMismatch";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::PivotNotInvertible: return "PivotNotInvertible";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NormalizerNotInvertible: return "NormalizerNotInvertible";
    case ErrorCode::NotReduced: return "NotReduced";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::FrameUnavailable: return "FrameUnavailable";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace abundle

#include "slag/error.hpp"

namespace slag {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NegativeS: return "NegativeS";
    case ErrorCode::DegenerateBranch: return "DegenerateBranch";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::SingularParameters: return "SingularParameters";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegeneracyEncountered: return "DegeneracyEncountered";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::ZeroRadius: return "ZeroRadius";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NonpositiveAlpha: return "NonpositiveAlpha";
    case ErrorCode::DegenerateRegion: return "DegenerateRegion";
    case ErrorCode::YZero: return "YZero";
    case ErrorCode::ZeroOnLoop: return "ZeroOnLoop";
    case ErrorCode::UnderSampled: return "UnderSampled";
    case ErrorCode::NonIntegerWinding: return "NonIntegerWinding";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace slag

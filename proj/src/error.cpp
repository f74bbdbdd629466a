#include "combandit/error.hpp"

namespace combandit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateArm: return "DuplicateArm";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidDims: return "InvalidDims";
    case ErrorCode::InvalidEnvironment: return "InvalidEnvironment";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::TooManyActions: return "TooManyActions";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace combandit

#include "hreg/errors.hpp"

namespace hreg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::GroundMismatch: return "GroundMismatch";
    case ErrorCode::ParameterOutOfContract: return "ParameterOutOfContract";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::FrameMismatch: return "FrameMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ClassSizeMismatch: return "ClassSizeMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::Format: return "Format";
  }
  return "Unknown";
}

}  // namespace hreg

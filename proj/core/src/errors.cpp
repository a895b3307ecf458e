#include "selfsim/errors.hpp"

namespace selfsim {

std::string error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DigitRange: return "DigitRange";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DuplicateState: return "DuplicateState";
    case ErrorCode::NoInitial: return "NoInitial";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::DeadState: return "DeadState";
    case ErrorCode::KernelOverflow: return "KernelOverflow";
    case ErrorCode::BaseOverflow: return "BaseOverflow";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::PathBudgetExceeded: return "PathBudgetExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnknownSet: return "UnknownSet";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::ResolutionMismatch: return "ResolutionMismatch";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::InvalidAutomaton: return "InvalidAutomaton";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace selfsim

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace selfsim {

enum class ErrorCode {
  EmptySet,
  BaseMismatch,
  SyntaxError,
  DigitRange,
  ArityMismatch,
  DuplicateState,
  NoInitial,
  UnknownState,
  DeadState,
  KernelOverflow,
  BaseOverflow,
  ToleranceNotReached,
  PathBudgetExceeded,
  BudgetExceeded,
  UnknownSet,
  UnsupportedDimension,
  ResolutionMismatch,
  VerificationFailed,
  InvalidAutomaton,
  InvalidArgument,
};

std::string error_code_name(ErrorCode code);

struct SourcePos {
  int line = 0;  // 1-based; 0 means "no position"
  int col = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(error_code_name(code) + ": " + message), code_(code) {}
  Error(ErrorCode code, std::string message, SourcePos pos)
      : std::runtime_error(error_code_name(code) + " at " + std::to_string(pos.line) + ":" +
                           std::to_string(pos.col) + ": " + message),
        code_(code),
        pos_(pos) {}

  ErrorCode code() const { return code_; }
  std::optional<SourcePos> pos() const { return pos_; }

 private:
  ErrorCode code_;
  std::optional<SourcePos> pos_;
};

}  // namespace selfsim

#pragma once

#include <stdexcept>
#include <string>

namespace dialog {

enum class ErrorKind {
  unassigned_point,
  unassigned_arrow,
  invalid_realization,
  source_target_mismatch,
  no_match,
  budget_exceeded,
  not_parallel,
  name_clash,
  purity_violation,
  unassigned,
  search_space_too_large,
  invalid_alpha,
  syntax_error,
  duplicate_name,
  invalid_spec,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::unassigned_point: return "UnassignedPoint";
    case ErrorKind::unassigned_arrow: return "UnassignedArrow";
    case ErrorKind::invalid_realization: return "InvalidRealization";
    case ErrorKind::source_target_mismatch: return "SourceTargetMismatch";
    case ErrorKind::no_match: return "NoMatch";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::not_parallel: return "NotParallel";
    case ErrorKind::name_clash: return "NameClash";
    case ErrorKind::purity_violation: return "PurityViolation";
    case ErrorKind::unassigned: return "Unassigned";
    case ErrorKind::search_space_too_large: return "SearchSpaceTooLarge";
    case ErrorKind::invalid_alpha: return "InvalidAlpha";
    case ErrorKind::syntax_error: return "SyntaxError";
    case ErrorKind::duplicate_name: return "DuplicateName";
    case ErrorKind::invalid_spec: return "InvalidSpec";
  }
  return "Error";
}

/// All library failures are reported as `dialog::Error`; `kind()` tells them apart.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The text without the kind prefix.
  const std::string& message() const noexcept { return message_; }

  bool is_budget() const noexcept {
    return kind_ == ErrorKind::budget_exceeded || kind_ == ErrorKind::search_space_too_large;
  }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace dialog

#pragma once

#include <stdexcept>
#include <string>

namespace stackgame {

/// Failure categories, grouped by the process exit code they map to:
/// 2 = numerical/regularity failure, 3 = non-interior equilibrium, 4 = bad input.
enum class ErrorKind {
  // numerical / regularity (exit 2)
  RegularityViolated,
  DivisionByZeroJet,
  CenterMismatch,
  OrderMismatch,
  ZeroOrder,
  NoConvergence,
  DegenerateSlope,
  DegenerateDenominator,
  // corner solution (exit 3)
  NonInterior,
  // validation (exit 4)
  BadInput,
  MonotonicityViolated,
  Overflow,
  BadPeriod,
  BadBelief,
  TrivialModel,
  StateSpaceTooLarge,
};

[[nodiscard]] constexpr const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::RegularityViolated: return "RegularityViolated";
    case ErrorKind::DivisionByZeroJet: return "DivisionByZeroJet";
    case ErrorKind::CenterMismatch: return "CenterMismatch";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::ZeroOrder: return "ZeroOrder";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateSlope: return "DegenerateSlope";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::NonInterior: return "NonInterior";
    case ErrorKind::BadInput: return "BadInput";
    case ErrorKind::MonotonicityViolated: return "MonotonicityViolated";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::BadPeriod: return "BadPeriod";
    case ErrorKind::BadBelief: return "BadBelief";
    case ErrorKind::TrivialModel: return "TrivialModel";
    case ErrorKind::StateSpaceTooLarge: return "StateSpaceTooLarge";
  }
  return "Unknown";
}

[[nodiscard]] constexpr int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonInterior:
      return 3;
    case ErrorKind::BadInput:
    case ErrorKind::MonotonicityViolated:
    case ErrorKind::Overflow:
    case ErrorKind::BadPeriod:
    case ErrorKind::BadBelief:
    case ErrorKind::TrivialModel:
    case ErrorKind::StateSpaceTooLarge:
      return 4;
    default:
      return 2;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        message_(message) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] int exit_code() const noexcept { return stackgame::exit_code(kind_); }
  /// Message without the kind prefix (what() carries both).
  [[nodiscard]] const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace stackgame

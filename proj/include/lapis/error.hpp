#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lapis {

enum class ErrorCode {
  OrderingViolation,
  RangeViolation,
  DegenerateRegime,
  NotDecoupled,
  OutOfDomain,
  EmptySupport,
  GridTooCoarse,
  NegativeTime,
  HalfPlaneViolation,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OrderingViolation: return "OrderingViolation";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::DegenerateRegime: return "DegenerateRegime";
    case ErrorCode::NotDecoupled: return "NotDecoupled";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::HalfPlaneViolation: return "HalfPlaneViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace lapis

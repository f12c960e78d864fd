#pragma once

#include <stdexcept>
#include <string>

namespace mwk {

enum class ErrorCode {
  ZeroInput,
  ZeroEntry,
  FactorizationOverflow,
  NotPrime,
  NotOddPrime,
  PlaceMismatch,
  DegreeMismatch,
  InconsistentInvariants,
  UnsupportedDegree,
  NotInKernel,
  DyadicUnsupported,
  ParseError,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::ZeroEntry: return "ZeroEntry";
    case ErrorCode::FactorizationOverflow: return "FactorizationOverflow";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotOddPrime: return "NotOddPrime";
    case ErrorCode::PlaceMismatch: return "PlaceMismatch";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::InconsistentInvariants: return "InconsistentInvariants";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::NotInKernel: return "NotInKernel";
    case ErrorCode::DyadicUnsupported: return "DyadicUnsupported";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mwk

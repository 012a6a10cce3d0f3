#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace restind {

enum class ErrorCode {
  ParseError,
  CapExceeded,
  NotTransitive,
  NotPrimeDegree,
  NotNormal,
  GroupMismatch,
  NotSubgroup,
  NotACharacter,
  NotIrreducible,
  TrivialN,
  NotSpanned,
  KernelContainsN,
  IdentityElement,
  TrivialGroup,
  TrivialSubgroup,
  DomainError,
  SieveCapExceeded,
  GaloisGroupUnconfirmed,
  Internal,
};

inline std::string_view error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotTransitive: return "NotTransitive";
    case ErrorCode::NotPrimeDegree: return "NotPrimeDegree";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::NotSubgroup: return "NotSubgroup";
    case ErrorCode::NotACharacter: return "NotACharacter";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::TrivialN: return "TrivialN";
    case ErrorCode::NotSpanned: return "NotSpanned";
    case ErrorCode::KernelContainsN: return "KernelContainsN";
    case ErrorCode::IdentityElement: return "IdentityElement";
    case ErrorCode::TrivialGroup: return "TrivialGroup";
    case ErrorCode::TrivialSubgroup: return "TrivialSubgroup";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SieveCapExceeded: return "SieveCapExceeded";
    case ErrorCode::GaloisGroupUnconfirmed: return "GaloisGroupUnconfirmed";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every recoverable failure in the library is reported as an Error carrying
/// one of the codes above.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

// Internal consistency violations (a bug, not bad input).
inline void ensure(bool cond, const char* what) {
  if (!cond) throw Error(ErrorCode::Internal, what);
}

}  // namespace restind

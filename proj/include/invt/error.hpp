#pragma once

#include <stdexcept>
#include <string>

namespace invt {

/// Stable error identifiers. The numeric values are part of the C API.
enum class ErrorCode : int {
  Ok = 0,
  Parse = 1,
  Precondition = 2,
  NotARootOfUnity = 10,
  NotInRootGroup = 11,
  ConductorMismatch = 12,
  NotIrreducible = 13,
  CapExceeded = 20,
  NotInvertible = 21,
  NotRegular = 22,
  NotSemisimple = 23,
  FiberNotCStable = 30,
  TooLarge = 31,
  ActionMismatch = 32,
  CharacterLengthMismatch = 40,
  NoStabilization = 41,
  DivisionByZeroSeries = 42,
  PoleAtPoint = 43,
  NotAnRModule = 50,
  TruncationTooSmall = 51,
  NotThetaStable = 52,
  NotPRegular = 60,
  UnsupportedGroupForInequality = 61,
  HypothesisFailure = 62,
  NonPolynomialX = 70,
  Io = 80,
  Internal = 99,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace invt

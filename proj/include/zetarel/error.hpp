#pragma once
#include <stdexcept>
#include <string>

namespace zetarel {

enum class Err {
  NotPrime,
  EvenCharacteristic,
  TooLarge,
  TooSmall,
  ZeroPolynomial,
  DependentRows,
  SingularCurve,
  NonIntegralCoefficient,
  OddDegree,
  NotSymplectic,
  PrecisionExhausted,
  NotSeparable,
  SharedRoots,
  WeilBoundViolated,
  NotCongruent,
  BadOrder,
  BadCongruence,
  MismatchedField,
  EmptySequence,
  InvalidInput,
  UnknownMethod,
  ConfigInvalid,
  CapExceeded,
  IoError,
};

const char* err_name(Err e);

// Single exception type carrying a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace zetarel

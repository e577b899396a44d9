#include "zetarel/error.hpp"

namespace zetarel {

const char* err_name(Err e) {
  switch (e) {
    case Err::NotPrime: return "NotPrime";
    case Err::EvenCharacteristic: return "EvenCharacteristic";
    case Err::TooLarge: return "TooLarge";
    case Err::TooSmall: return "TooSmall";
    case Err::ZeroPolynomial: return "ZeroPolynomial";
    case Err::DependentRows: return "DependentRows";
    case Err::SingularCurve: return "SingularCurve";
    case Err::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case Err::OddDegree: return "OddDegree";
    case Err::NotSymplectic: return "NotSymplectic";
    case Err::PrecisionExhausted: return "PrecisionExhausted";
    case Err::NotSeparable: return "NotSeparable";
    case Err::SharedRoots: return "SharedRoots";
    case Err::WeilBoundViolated: return "WeilBoundViolated";
    case Err::NotCongruent: return "NotCongruent";
    case Err::BadOrder: return "BadOrder";
    case Err::BadCongruence: return "BadCongruence";
    case Err::MismatchedField: return "MismatchedField";
    case Err::EmptySequence: return "EmptySequence";
    case Err::InvalidInput: return "InvalidInput";
    case Err::UnknownMethod: return "UnknownMethod";
    case Err::ConfigInvalid: return "ConfigInvalid";
    case Err::CapExceeded: return "CapExceeded";
    case Err::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace zetarel

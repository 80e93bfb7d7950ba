#include "symk/errors.hpp"

namespace symk {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NotASubfield: return "NotASubfield";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::NotGenerator: return "NotGenerator";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::PoleAtPlace: return "PoleAtPlace";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::NotRegularOnCPrime: return "NotRegularOnCPrime";
    case ErrorKind::BaseFieldTooSmall: return "BaseFieldTooSmall";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Error";
}

}  // namespace symk

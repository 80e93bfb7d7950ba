#pragma once

#include <stdexcept>
#include <string>

namespace symk {

enum class ErrorKind {
  DivisionByZero,
  FieldMismatch,
  NotASubfield,
  ZeroPolynomial,
  NotGenerator,
  ZeroElement,
  ZeroFunction,
  PoleAtPlace,
  TooLarge,
  NotRegular,
  Unsupported,
  ConditionViolated,
  DegreeOverflow,
  NotRegularOnCPrime,
  BaseFieldTooSmall,
  ParseError,
  SchemaError,
  UsageError,
  Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace symk

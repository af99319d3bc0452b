#pragma once

#include <stdexcept>
#include <string>

namespace ptor {

enum class Err {
  Schema,
  PrimeMismatch,
  SignatureMismatch,
  DivisionByZero,
  PrecisionExhausted,
  NormViolation,
  ContractionViolated,
  DegreeCapExceeded,
  ResolutionTooLong,
  ZeroSeries,
  OracleMissing,
  WindowMismatch,
  RMaxExceeded,
  UndecidedAtPrecision,
  UndecidedGeneralD,
  NonpositiveBound,
  Internal,
};

const char* err_name(Err e);

// Exit-code contract: 0 ok, 2 schema, 3 precision, 4 undecided, 5 cap.
int err_exit_code(Err e);

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

} // namespace ptor

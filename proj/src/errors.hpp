#pragma once

#include <stdexcept>
#include <string>

namespace qpure {

enum class ErrorCode {
  InvalidArgument,
  InvalidDimension,
  InvalidSubset,
  InvalidPartition,
  InvalidPurity,
  InvalidFrame,
  NotHermitian,
  TraceNotOne,
  NotPSD,
  SizeLimit,
  IncompleteMap,
  DimensionMismatch,
  Inapplicable,
  ParseError,
  IoError,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the core carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qpure

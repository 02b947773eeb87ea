#include "errors.hpp"

namespace qpure {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidSubset: return "InvalidSubset";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::InvalidPurity: return "InvalidPurity";
    case ErrorCode::InvalidFrame: return "InvalidFrame";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::IncompleteMap: return "IncompleteMap";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Inapplicable: return "Inapplicable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace qpure

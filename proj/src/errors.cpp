#include "streetgen/errors.hpp"

namespace streetgen {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter:
      return "invalid-parameter";
    case ErrorCode::DegenerateInput:
      return "degenerate-input";
    case ErrorCode::EmptyResult:
      return "empty-result";
    case ErrorCode::InvalidGeometry:
      return "invalid-geometry";
    case ErrorCode::NoCircle:
      return "no-circle";
    case ErrorCode::NotFound:
      return "not-found";
    case ErrorCode::SingularSpeed:
      return "singular-speed";
    case ErrorCode::InternalInconsistency:
      return "internal-inconsistency";
    case ErrorCode::CrossingOutOfSurface:
      return "crossing-out-of-surface";
    case ErrorCode::InvalidObject:
      return "invalid-object";
    case ErrorCode::ParseError:
      return "parse-error";
    case ErrorCode::IoError:
      return "io-error";
    case ErrorCode::ExportError:
      return "export-error";
  }
  return "unknown";
}

}  // namespace streetgen

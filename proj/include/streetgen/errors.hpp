#pragma once

#include <stdexcept>
#include <string>

namespace streetgen {

enum class ErrorCode {
  InvalidParameter,
  DegenerateInput,
  EmptyResult,
  InvalidGeometry,
  NoCircle,
  NotFound,
  SingularSpeed,
  InternalInconsistency,
  CrossingOutOfSurface,
  InvalidObject,
  ParseError,
  IoError,
  ExportError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace streetgen

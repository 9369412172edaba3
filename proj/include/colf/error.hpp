#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace colf {

enum class ErrorCode {
  kTypeError,
  kEmptyChunk,
  kConfigError,
  kPrecisionError,
  kCardinalityError,
  kCorruptChunk,
  kIndexError,
  kCorruptBlock,
  kIoError,
  kNotColf,
  kCorruptFile,
  kNameError,
  kShapeError,
  kSchemaError,
  kParseError,
  kUnsupported,
};

std::string_view error_code_name(ErrorCode code);

/// Every library failure is reported as a ColfError carrying a machine-readable code.
class ColfError : public std::runtime_error {
 public:
  ColfError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw ColfError(code, message);
}

}  // namespace colf

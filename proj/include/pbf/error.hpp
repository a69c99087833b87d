#pragma once

#include <stdexcept>
#include <string>

namespace pbf {

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  InvalidArgument = 1,
  TruncationOverflow = 2,
  TruncationTooSmall = 3,
  SpecInvalid = 4,
  UnknownElement = 5,
  UnknownRelation = 6,
  UnknownPreset = 7,
  Io = 8,
  Parse = 9,
  DimensionZero = 10,
  GramDegenerate = 11,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace pbf

#pragma once

#include <stdexcept>
#include <string>

namespace expoly {

enum class ErrorCode {
  InvalidArgument = 1,
  Domain,
  Range,
  Precondition,
  Breakdown,
  InsufficientData,
  Io,
};

/// Exception carried through the C++ core; the C API maps `code()` onto
/// `expoly_status` values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace expoly

#pragma once

#include <stdexcept>
#include <string>

namespace bellmark {

enum class ErrorCode {
  InvalidArgument,
  NoViolationMargin,  // margin t <= 0 or alpha <= 1/D
  NotFound,
  Precondition,
  Io,
};

/// Exception type thrown by every module. The C API maps `code()` onto a
/// `bm_status` value.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

} // namespace bellmark

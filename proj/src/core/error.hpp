#pragma once

#include <stdexcept>
#include <string>

namespace siopo {

enum class ErrorCode {
  validation = 1,   // bad input, constraint violation
  numeric = 2,      // quadrature / solver non-convergence
  reproduction = 3, // reference reproduction failure
  io = 4,           // file system
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail_validation(const std::string& what) {
  throw Error(ErrorCode::validation, what);
}
[[noreturn]] inline void fail_numeric(const std::string& what) {
  throw Error(ErrorCode::numeric, what);
}
[[noreturn]] inline void fail_io(const std::string& what) {
  throw Error(ErrorCode::io, what);
}

}  // namespace siopo

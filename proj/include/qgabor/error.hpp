#pragma once

#include <stdexcept>
#include <string>

namespace qgabor {

enum class ErrorCode {
  invalid_argument,
  model_mismatch,
  incommensurate_shift,
  degenerate_window,
  unsupported,
  not_a_frame,
  not_invertible,
  insufficient_radius,
  convergence_not_certified,
  numerical,
  lattice_approximation,
  io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Process exit status for the CLI: 2 I/O or config, 3 invalid mathematical
// input, 4 convergence or truncation.
int exit_status(ErrorCode code);

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace qgabor

#include "qgabor/error.hpp"

namespace qgabor {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::model_mismatch: return "model-mismatch";
    case ErrorCode::incommensurate_shift: return "incommensurate-shift";
    case ErrorCode::degenerate_window: return "degenerate-window";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::not_a_frame: return "not-a-frame";
    case ErrorCode::not_invertible: return "not-invertible";
    case ErrorCode::insufficient_radius: return "insufficient-radius";
    case ErrorCode::convergence_not_certified: return "convergence-not-certified";
    case ErrorCode::numerical: return "numerical";
    case ErrorCode::lattice_approximation: return "lattice-approximation";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::io:
      return 2;
    case ErrorCode::insufficient_radius:
    case ErrorCode::convergence_not_certified:
      return 4;
    default:
      return 3;
  }
}

}  // namespace qgabor

#pragma once

#include <stdexcept>

namespace yeastlink {

// Malformed configuration, parameter file, or CLI input.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An input series or file violates a data contract (missing species,
// non-finite samples, no overlap, ...).
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure: stiffness, step-budget exhaustion, non-finite state.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace yeastlink

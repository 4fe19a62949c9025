#pragma once

#include <stdexcept>

namespace textlab {

// Unreadable, malformed, or missing external input. Maps to exit code 2 in
// the CLI. Contract violations on in-process arguments use std::domain_error.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure (non-convergent integration, degenerate optimization).
// Maps to exit code 3 in the CLI.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace textlab

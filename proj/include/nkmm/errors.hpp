#pragma once

#include <stdexcept>
#include <string>

namespace nkmm {

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// input too close to a singular configuration (retraction, frames)
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// rank decision too close to the threshold; caller should refine
struct IndeterminateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nkmm

// errors.hpp — exception taxonomy shared across the engine and the CLI.

#pragma once

#include <stdexcept>
#include <string>

namespace rabisim {

// Anything that fails while computing (propagation, root finding, searches).
struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoRootError : ComputationError {
    using ComputationError::ComputationError;
};

struct NoOptimumError : ComputationError {
    using ComputationError::ComputationError;
};

// Configuration / input file problems; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rabisim

#pragma once

#include <stdexcept>
#include <string>

namespace pit {

/// Base class for all runtime failures raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an inner implicit-step solve does not reach its tolerance
/// within the iteration cap. Carries the residual that was achieved.
struct InnerSolveError : Error {
    InnerSolveError(std::string what, double achieved, int iters)
        : Error(std::move(what)), achieved_relative_residual(achieved), iterations(iters) {}

    double achieved_relative_residual;
    int iterations;
};

/// Wraps a failure inside a slab-propagation task with the slab it came from.
struct SlabError : Error {
    SlabError(int slab, const std::string& what)
        : Error("slab " + std::to_string(slab) + ": " + what), slab_index(slab) {}

    int slab_index;
};

/// Invalid CLI flag combination or malformed config file.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace pit

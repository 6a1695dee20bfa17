#pragma once

#include <stdexcept>
#include <string>

namespace ntnsim {

// Bad or inconsistent configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure during a run (CLI exit code 1).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degenerate geometry (coincident points, collinear solve).
struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent output data detected by the report validator.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ntnsim

#pragma once

#include <stdexcept>
#include <string>

namespace wsmorse {

/// Bad input: malformed scenario files, unknown keys, parameter ranges,
/// mismatched grids. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure detected while computing: degenerate tube, singular metric,
/// CFL violation, gauge-drift ceiling, overflow. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace wsmorse

#pragma once

#include <stdexcept>
#include <string>

namespace svi {

// Base class for all engine errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad command-line usage or invalid operation preconditions.
struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Malformed polynomial / cycle / point text.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Random choices exhausted without finding a generic one (non-zerodivisor
// resampling, hull resampling, polar resampling).
struct GenericityError : Error {
    explicit GenericityError(const std::string& msg) : Error(msg) {}
};

// Cross-run classification could not be stabilized.
struct InstabilityError : Error {
    explicit InstabilityError(const std::string& msg) : Error(msg) {}
};

// An internal exact-arithmetic invariant failed; indicates a bug, never
// expected on any input.
struct AuditError : Error {
    explicit AuditError(const std::string& msg) : Error(msg) {}
};

// Hilbert-Samuel sampling hit the window cap without stabilizing.
struct StabilizationError : Error {
    explicit StabilizationError(const std::string& msg) : Error(msg) {}
};

} // namespace svi

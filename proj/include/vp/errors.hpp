#pragma once

#include <stdexcept>
#include <string>

namespace vp {

// Malformed or out-of-contract input (dimension mismatch, degenerate data).
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// The request is valid but outside the exact-computation envelope
// (dimension caps, generator caps).
struct capability_error : std::runtime_error {
    explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

// A documented hypothesis of a check does not hold for the supplied data.
struct precondition_error : std::invalid_argument {
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace vp

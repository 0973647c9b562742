#pragma once

#include <stdexcept>
#include <string>

namespace gametree {

/// Thrown when a request exceeds a configured resource cap.
/// The message names the cap that was hit.
class CapExceeded : public std::runtime_error {
public:
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

/// Internal numeric failure (singular system, non-convergent scan).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gametree

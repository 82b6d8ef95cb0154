#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

namespace psi {

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }
inline double clamp_signed(double x) { return std::clamp(x, -1.0, 1.0); }

// Bad config file, map file, fixture file or CLI flag combination.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or truncated run log fed back into the metrics tooling.
struct LogError : std::runtime_error {
    explicit LogError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psi

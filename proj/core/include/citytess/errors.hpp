#pragma once

#include <stdexcept>
#include <string>

namespace citytess {

// Bad arguments, flags, or config files. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input data that cannot be processed as requested. CLI exit code 3.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// A single training run whose loss went non-finite. Recorded as a failed
// trial/run by sweeps, never fatal to the surrounding search.
class TrainingDiverged : public std::runtime_error {
public:
    explicit TrainingDiverged(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace citytess

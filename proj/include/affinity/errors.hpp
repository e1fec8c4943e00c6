#pragma once

#include <stdexcept>
#include <string>

namespace affinity {

// Error taxonomy: each class maps to a distinct CLI exit code (see tools/).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Feature-name-set or kind disagreement between records of one dataset,
// or between a model and the data it is applied to.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TrainError : std::runtime_error {
    explicit TrainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Corrupt, truncated or version-incompatible model/cache files.
struct ModelIoError : std::runtime_error {
    explicit ModelIoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace affinity

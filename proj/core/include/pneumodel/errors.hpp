#pragma once

#include <stdexcept>
#include <string>

namespace pneumodel {

// Config file problems: syntax, unknown keys, invariant violations.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Model/solver failures: bad brackets, singular systems, unreachable targets.
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pneumodel

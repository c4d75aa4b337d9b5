#pragma once

#include <stdexcept>

namespace isac {

/// Invalid configuration values (numerology, scenario, allocation problem).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// API misuse: mismatched dimensions, odd bit counts, zero-vector inputs.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Attempt to map a symbol onto an already-occupied resource element.
class MappingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace isac

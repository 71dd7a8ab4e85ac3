#pragma once

#include <stdexcept>
#include <string>

namespace rcsim {

/// Caller broke an operation's precondition (self-loop, dead node, bad id).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A quantity is mathematically undefined for the given input.
class UndefinedValueError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid generator or experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A CSV or edge-list file does not match the expected schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rcsim

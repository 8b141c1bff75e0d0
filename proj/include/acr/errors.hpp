#pragma once

#include <stdexcept>
#include <string>

namespace acr {

/// Bad argument or malformed data handed to a library operation.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inconsistent run or experiment configuration, detected before any work starts.
class ConfigError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The exact solver refuses instances it cannot enumerate in reasonable memory.
class UnsupportedSize : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace acr

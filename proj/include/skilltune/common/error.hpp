#ifndef SKILLTUNE_COMMON_ERROR_HPP
#define SKILLTUNE_COMMON_ERROR_HPP

#include <stdexcept>
#include <string>

namespace skilltune {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent scenario/scene input.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace skilltune

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace semdex {

/// Error caused by bad user input (missing files, malformed data, bad
/// config). CLI maps this to exit code 2; everything else is a
/// computation error (exit code 1).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace semdex

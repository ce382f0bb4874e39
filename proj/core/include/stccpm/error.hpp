#pragma once

#include <stdexcept>
#include <string>

namespace stccpm {

// Invalid or inconsistent parameters handed to any operation.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// A structure (trellis, candidate bank) cannot be built for the given parameters.
class ConstructionError : public std::runtime_error {
public:
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stccpm

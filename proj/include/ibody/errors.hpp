#pragma once

#include <stdexcept>
#include <string>

namespace ibody {

// Problem with user-supplied input (bad file, wrong dimension, non-vertex
// point, ...). The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& message)
        : std::runtime_error(message) {}
};

// The engine contradicted itself (a division that must be exact failed, an
// assembled sum vanished where it cannot, ...). The CLI maps this to exit
// code 3; any occurrence is a bug, not a usage error.
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& message)
        : std::runtime_error(message) {}
};

} // namespace ibody

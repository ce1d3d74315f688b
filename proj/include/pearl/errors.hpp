#pragma once

#include <stdexcept>

namespace pearl {

// Input that does not parse or does not follow the document schema.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input that parses but breaks a mathematical invariant (d^2 != 0, ...).
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments to an operation (out-of-range l, unknown name, ...).
struct ArgumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pearl

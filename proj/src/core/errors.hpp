#pragma once

#include <stdexcept>
#include <string>

namespace sfstokes {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad sizes, out-of-range parameters, malformed inputs.
struct InvalidArgumentError : Error {
    explicit InvalidArgumentError(const std::string& what) : Error(what) {}
};

// Boundary-condition kind combined with an incompatible pressure gauge.
struct InvalidPairingError : InvalidArgumentError {
    explicit InvalidPairingError(const std::string& what) : InvalidArgumentError(what) {}
};

// Numerically singular linear system; `index` is the offending pivot/column
// when the factorization reports one, -1 otherwise.
struct SingularSystemError : Error {
    SingularSystemError(const std::string& what, long index_)
        : Error(what), index(index_) {}
    long index;
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace sfstokes

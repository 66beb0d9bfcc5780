#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lgdeg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArgumentError : Error {
    using Error::Error;
};

// Input does not affinely span its ambient space.
struct DimensionError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

// An internal identity failed; indicates a bug upstream.
struct InvariantError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ResourceError : Error {
    ResourceError(const std::string& what, std::size_t partial)
        : Error(what), partial(partial) {}
    std::size_t partial;
};

}  // namespace lgdeg

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treehom {

// Error taxonomy shared by all modules. The command line front end maps
// these onto exit codes: input problems exit 2, structural or internal
// failures exit 3.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// bad sizes, bad parameters, dimension mismatches
struct invalid_argument_error : error {
    using error::error;
};

// malformed document; position is a byte offset into the input text
struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& what, std::size_t pos)
        : error(what + " (at byte " + std::to_string(pos) + ")"), position(pos) {}
};

// well-formed document describing an invalid object (duplicate edge, bad index)
struct validation_error : error {
    using error::error;
};

// the supplied classes are not a partition of the vertex set
struct partition_error : error {
    using error::error;
};

// orbit computation refused, target too large; supply a partition manually
struct size_limit_error : error {
    using error::error;
};

// interval division where the divisor straddles zero
struct division_error : error {
    using error::error;
};

// eigenvalue enclosures overlap where distinct values are required
struct distinctness_error : error {
    using error::error;
};

// an operation's stated precondition does not hold for the given input
struct precondition_error : error {
    using error::error;
};

// the spectrum does not have the shape a certificate needs
struct structure_error : error {
    using error::error;
};

// invariant broken inside the engine, e.g. two counting engines disagree
struct internal_error : error {
    using error::error;
};

} // namespace treehom

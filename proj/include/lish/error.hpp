#pragma once

#include <stdexcept>
#include <string>

#include "lish/path.hpp"

namespace lish {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A path that does not address a node, or addresses the wrong kind of node.
struct PathError : Error {
    PathError(const std::string& what, LishPath failing_prefix)
        : Error(what), prefix(std::move(failing_prefix)) {}
    LishPath prefix;
};

/// An operation applied outside its domain (e.g. effective formula of a margin).
struct DomainError : Error {
    using Error::Error;
};

/// Ragged or empty tabular input.
struct ShapeError : Error {
    using Error::Error;
};

/// JSON that does not match the document format. `pointer` is an RFC 6901 pointer.
struct SchemaError : Error {
    SchemaError(const std::string& what, std::string json_pointer)
        : Error(json_pointer.empty() ? what : json_pointer + ": " + what),
          pointer(std::move(json_pointer)) {}
    std::string pointer;
};

/// Rejected by the document's formula policy (strict mode).
struct PolicyError : Error {
    using Error::Error;
};

/// Malformed edit command arguments (bad indices, wrong node kind, ...).
struct CommandError : Error {
    using Error::Error;
};

} // namespace lish

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spider {

/// Malformed textual input. `position` is a 0-based byte offset into the text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Structurally invalid diagram or web (degree rules, pairing rules, ...).
class ValidationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precondition failure of an operation (bad site, wrong arity, ...).
class DomainError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configured resource ceiling exceeded (crossing limit).
class LimitError : public std::runtime_error {
public:
    LimitError(const std::string& what, int limit)
        : std::runtime_error(what), limit_(limit) {}
    int limit() const { return limit_; }

private:
    int limit_;
};

} // namespace spider

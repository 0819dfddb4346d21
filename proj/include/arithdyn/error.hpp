#pragma once

#include <stdexcept>
#include <string>

namespace arithdyn {

/// Malformed input: bad expression, violated precondition, unknown option.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Expression syntax error with the 0-based character offset of the fault.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A configured size or degree cap was hit before the computation finished.
class ResourceCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Always a bug.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace arithdyn

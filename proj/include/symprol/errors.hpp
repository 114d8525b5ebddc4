#pragma once

#include <stdexcept>
#include <string>

namespace symprol {

/// Malformed text input (tensors, rationals, algebra files, parameter strings).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that parses but violates a precondition (unknown catalog name,
/// illegal parameter, span that is not a subalgebra, inconsistent data).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arithmetic misuse such as division by zero or a dimension mismatch.
class MathError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace symprol

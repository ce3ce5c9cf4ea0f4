#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace skewlab {

/// Bad input values: mismatched fields or rings, division by zero,
/// composite modulus, a map that is not invertible, and the like.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Input is well formed but outside the families this library handles
/// exactly. Callers can catch this to degrade gracefully.
class unsupported_error : public std::runtime_error {
public:
    explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant failed. Always a bug, never a user error.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

/// Lexical, syntactic or semantic error in a spec file, with position.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line, std::size_t col)
        : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                             std::to_string(col)),
          line_(line),
          col_(col) {}

    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

} // namespace skewlab

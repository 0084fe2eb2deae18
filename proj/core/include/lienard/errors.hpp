#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lienard {

/// Base class of every exception thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Expression source could not be parsed; position is 1-based in the input text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}

    [[nodiscard]] std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Expression evaluation failed: unbound variable, division by zero, sqrt of a negative.
class EvalError : public Error {
public:
    using Error::Error;
};

/// An operation requiring polynomial structure met a non-polynomial node.
class NonPolynomialError : public Error {
public:
    using Error::Error;
};

/// A state or box violates the system's domain requirements.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A run configuration is malformed or inconsistent.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace lienard

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace poisenv {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed expression text. position is a 0-based byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class UnknownVariableError : public ParseError {
public:
    UnknownVariableError(const std::string& name, std::size_t position)
        : ParseError("unknown variable '" + name + "'", position), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

// Gröbner basis size or degree exceeded the configured cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

// Operands live in different polynomial rings or presentations.
class AmbientMismatchError : public Error {
public:
    using Error::Error;
};

// An operation was called on data that violates its precondition.
class DomainError : public Error {
public:
    using Error::Error;
};

// The graded descent of the zero test failed to lower the top degree.
class DescentError : public Error {
public:
    using Error::Error;
};

}  // namespace poisenv

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symred {

// Base class for everything this library throws on malformed input.
// Mathematical failures (a form that is not closed, a map that is not a
// moment map) are never exceptions; they travel as certificate data.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class RingMismatchError : public Error {
public:
    explicit RingMismatchError(const std::string& msg) : Error(msg) {}
};

class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& msg) : Error(msg) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Expression / scenario file syntax error carrying a byte offset into the
// offending text (0-based).
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

} // namespace symred

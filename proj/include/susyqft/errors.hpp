#pragma once

#include <stdexcept>
#include <string>

namespace sqft {

// Argument outside the mathematical domain (shift outside the strip, zero lambda, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Word shape not supported by an evaluator (two field insertions, wrong generator kind, ...).
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

}  // namespace sqft

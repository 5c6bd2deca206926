#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lipfree {

/// Inconsistent dimensions or references (matrix shape, point index out of range, space mismatch).
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A parameter outside its admissible range.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A mathematical hypothesis of an operation does not hold. Carries the
/// offending point indices (pair, quadruple, ...) when one exists.
class PreconditionError : public std::domain_error {
public:
    PreconditionError(const std::string& what, std::vector<int> witness = {})
        : std::domain_error(what), witness_(std::move(witness)) {}

    const std::vector<int>& witness() const noexcept { return witness_; }

private:
    std::vector<int> witness_;
};

/// Malformed input text. `location` names the JSON path or token.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::string location)
        : std::runtime_error(what + " at " + location), location_(std::move(location)) {}

    const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

}  // namespace lipfree

#pragma once

#include <stdexcept>
#include <string>

namespace sos {

// Malformed or mismatched arguments.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation would exceed its enumeration or state-space guard.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A structural invariant does not hold (e.g. incompatible cylinders).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int row, int column)
        : std::runtime_error(what + " (row " + std::to_string(row) + ", column " +
                             std::to_string(column) + ")"),
          row_(row), column_(column) {}

    int row() const { return row_; }
    int column() const { return column_; }

private:
    int row_;
    int column_;
};

}  // namespace sos

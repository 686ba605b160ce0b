#pragma once

#include <stdexcept>
#include <string>

namespace wellsep {

// Caller violated a precondition (bad sizes, k out of range, malformed input).
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// Reading or writing an artifact failed.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant was breached (e.g. Lloyd cost increased).
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace wellsep

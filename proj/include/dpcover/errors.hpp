#ifndef DPCOVER_ERRORS_HPP
#define DPCOVER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dpcover {

// Bad arguments or malformed input. CLI exit code 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// A computation would exceed an explicit size guard. CLI exit code 2.
class GuardExceeded : public std::runtime_error {
public:
    explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

// File read/write failure. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dpcover

#endif // DPCOVER_ERRORS_HPP

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace friedrichs {

// Base class for all errors raised by the library. Every message names the
// module, the violated precondition and the offending value.
class Error : public std::runtime_error {
public:
    Error(std::string_view module, std::string_view condition, std::string_view value);

    const std::string& module() const noexcept { return module_; }
    const std::string& condition() const noexcept { return condition_; }

private:
    std::string module_;
    std::string condition_;
};

// Invalid input or configuration: bad grid, bad potential parameters,
// unreadable files, malformed schedules.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A numerical result was rejected: non-integer winding, under-resolved
// grid, non-monotone extrapolation, too many exceptional points.
class NumericalError : public Error {
public:
    using Error::Error;
};

std::string format_value(double v);

} // namespace friedrichs

#pragma once

#include <stdexcept>
#include <string>

namespace corrnoise {

// Argument outside the mathematical domain of a function (branch cut, divergence, bad enum).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Query outside tabulated data; no extrapolation is attempted.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Quadrature or eigen-solver did not reach its target.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Time integration failed to converge or produced an unphysical state.
class IntegrationError : public NumericError {
public:
    IntegrationError(const std::string& what, double time)
        : NumericError(what + " (t = " + std::to_string(time) + ")"), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

// Malformed or invalid run configuration. `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace corrnoise

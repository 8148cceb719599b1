#ifndef POLYMETRIC_ERROR_HPP
#define POLYMETRIC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polymetric {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad configuration, wrong dimension, broken precondition
/// detected before any computation starts.
class ValidationError : public Error {
public:
    using Error::Error;
};

class DimensionError : public ValidationError {
public:
    DimensionError(std::size_t expected, std::size_t actual, const std::string& what = "point")
        : ValidationError(what + ": expected dimension " + std::to_string(expected) + ", got " +
                          std::to_string(actual)),
          expected_(expected),
          actual_(actual)
    {
    }

    std::size_t expected() const noexcept { return expected_; }
    std::size_t actual() const noexcept { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

/// A computation ran and reached a mathematically negative outcome
/// (axiom violated, map not contractive, iteration did not converge...).
class MathError : public Error {
public:
    using Error::Error;
};

} // namespace polymetric

#endif

#pragma once

#include <stdexcept>
#include <string>

namespace rydkerr {

/// Invalid user input: parameters, config keys, preconditions.
/// Mapped to CLI exit code 2.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: quadrature non-convergence, series stagnation.
/// Mapped to CLI exit code 3.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rydkerr

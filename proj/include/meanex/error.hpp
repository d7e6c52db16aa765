#pragma once

#include <stdexcept>
#include <string>

namespace meanex {

/// Bad user input or a violated precondition. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numeric or domain failure: undefined band, singular design, quadrature
/// that did not converge, Bessel overflow. The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace meanex

#pragma once

#include <stdexcept>
#include <string>

namespace amgate {

/// Invalid input: bad parameters, violated preconditions, malformed files.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical stage could not produce a result at the requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace amgate

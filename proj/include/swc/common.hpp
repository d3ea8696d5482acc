#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace swc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { LessEqual, Equal, GreaterEqual };

std::string to_string(RowSense sense);

// Base for every error raised by the library. CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace swc

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cyforge {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  std::size_t line;
  std::size_t col;
  ParseError(std::size_t line, std::size_t col, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        line(line), col(col) {}
};

struct UnknownVertex : Error {
  using Error::Error;
};
struct DuplicateArrow : Error {
  using Error::Error;
};
struct DegreeMismatch : Error {
  using Error::Error;
};
struct NotSquareZero : Error {
  using Error::Error;
};
struct NonHomogeneous : Error {
  using Error::Error;
};
struct InvalidComplex : Error {
  using Error::Error;
};
struct NotCellular : Error {
  using Error::Error;
};
struct NotACycle : Error {
  using Error::Error;
};
struct NotClosed : Error {
  using Error::Error;
};
struct SolveFailed : Error {
  using Error::Error;
};
struct WindowUnbounded : Error {
  using Error::Error;
};

}  // namespace cyforge

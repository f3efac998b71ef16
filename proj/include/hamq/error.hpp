#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hamq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAnEdge : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string &what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

struct SizeLimit : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotConnected : Error {
  using Error::Error;
};

struct ZeroVector : Error {
  using Error::Error;
};

struct BadParameters : Error {
  using Error::Error;
};

struct NotInE0 : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct BadSuite : Error {
  using Error::Error;
};

} // namespace hamq

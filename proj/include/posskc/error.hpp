#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posskc {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed or semantically invalid input (text formats, names, networks).
// Line and column are 1-based; 0 means "not applicable".
class InputError : public Error {
public:
  explicit InputError(const std::string& what, std::size_t line = 0, std::size_t column = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

// A configured resource cap (compiler node budget, enumeration guard) was hit.
class BudgetError : public Error {
public:
  using Error::Error;
};

}  // namespace posskc

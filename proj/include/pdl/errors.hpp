// Exception types shared across the library.

#ifndef PDL_ERRORS_HPP
#define PDL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdl {

// Malformed input text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column, std::string file = {});

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& file() const { return file_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
  std::string file_;
};

// A configured resource bound (node cap, enumeration budget) was exceeded.
// Distinct from any logical answer.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A violated internal invariant; indicates a bug, never a property of the
// input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pdl

#endif  // PDL_ERRORS_HPP

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace secinterop {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. line/column are 1-based; 0 means unknown.
class ParseError : public Error {
  public:
    ParseError(std::string message, std::size_t line = 0, std::size_t column = 0);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& detail() const { return detail_; }

  private:
    std::string detail_;
    std::size_t line_;
    std::size_t column_;
};

// Attribute or schema disagreement between operands.
class SchemaError : public Error {
  public:
    using Error::Error;
};

// A value that falls outside its attribute's declared domain.
class DomainError : public Error {
  public:
    using Error::Error;
};

}  // namespace secinterop

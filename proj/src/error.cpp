#include "secinterop/error.hpp"

namespace secinterop {

namespace {

std::string located(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    std::string prefix = std::to_string(line);
    if (column != 0) prefix += ":" + std::to_string(column);
    return prefix + ": " + message;
}

}  // namespace

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : Error(located(message, line, column)), detail_(std::move(message)), line_(line),
      column_(column) {}

}  // namespace secinterop

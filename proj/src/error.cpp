#include "fsf/error.hpp"

namespace fsf {

namespace {

std::string with_line(const std::string& message, std::size_t line) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ": " + message;
}

}  // namespace

Error::Error(const std::string& message, std::size_t line)
    : std::runtime_error(with_line(message, line)), message_(message), line_(line) {}

}  // namespace fsf

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsf {

/// Malformed input, an invalid argument, or a violated construction
/// precondition. Parse errors carry the 1-based source line (0 = none).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message, std::size_t line = 0);

  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t line_;
};

/// A configured work cap (node cap, enumeration budget) was hit.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace fsf

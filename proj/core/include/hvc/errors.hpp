#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hvc {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), message_(what), position_(position) {}
  std::size_t position() const { return position_; }
  // The diagnostic without the position suffix.
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

// Division by zero, vanishing denominator under evaluation, missing coordinate.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hvc

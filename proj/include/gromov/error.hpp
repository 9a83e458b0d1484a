#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gromov {

// Malformed arguments or parameters supplied by the caller.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-formed input on which the operation is undefined (disconnected pair,
// point outside the disk, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class CapacityError : public std::length_error {
 public:
  CapacityError(const std::string& what, std::size_t required)
      : std::length_error(what), required_bytes_(required) {}

  std::size_t required_bytes() const noexcept { return required_bytes_; }

 private:
  std::size_t required_bytes_;
};

}  // namespace gromov

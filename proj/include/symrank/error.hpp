#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace symrank {

/// Raised when a computation would exceed the configured memory budget or
/// enumeration limit. Carries the number of bytes (or items) it asked for.
class ResourceExhausted : public std::runtime_error {
 public:
  ResourceExhausted(const std::string& what, std::uint64_t required)
      : std::runtime_error(what), required_(required) {}

  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

/// Raised on rank tables that were cut off by the max-rank limit when the
/// operation needs every layer to be complete.
class TruncatedTable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symrank

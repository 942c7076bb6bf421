#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fiberwalk {

enum class ErrorKind {
  invalid_state,
  move_not_applicable,
  unsupported_levels,
  invalid_partition,
  too_large,
  incompatible,
  fiber_too_large,
  missing_facets,
  invalid_witness_move,
  unsupported,
  invalid_square,
  invalid_input,
  usage,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fiberwalk

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpqls {

enum class ErrorKind {
  dimension,
  non_finite,
  index_out_of_range,
  singular,
  super_optimal_undefined,
  zero_column,
  cap_exceeded,
  non_unitary,
  domain,
  invalid_rotation,
  empty_postselection,
  parse,
  io,
  fidelity_below_threshold,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cpqls

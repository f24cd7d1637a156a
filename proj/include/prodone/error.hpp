#pragma once

#include <stdexcept>
#include <string>

namespace prodone {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct parse_error : error {
  using error::error;
};

// Exponent or multiplicity arithmetic left the 64-bit (resp. 32-bit) range.
struct overflow_error : error {
  using error::error;
};

struct budget_exceeded : error {
  using error::error;
};

struct precondition_error : error {
  using error::error;
};

}  // namespace prodone

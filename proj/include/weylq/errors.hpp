#pragma once

#include <stdexcept>
#include <string>

namespace weylq {

// Error taxonomy. The CLI maps these onto exit codes: argument/configuration/
// resource -> 2, schema -> 3, precision/range -> 4.

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unsupported series/rank or malformed configuration values.
struct configuration_error : error {
  using error::error;
};

// Semantically invalid arguments (non-dominant weight, non-central point, ...).
struct argument_error : error {
  using error::error;
};

// Desk-scale guard exceeded (|W|, dim V, fusion size).
struct resource_error : error {
  using error::error;
};

// A tolerance-based decision fell inside its ambiguity band, or an
// extrapolation failed to converge.
struct precision_error : error {
  using error::error;
};

// exp() overflow guard for extreme exponents.
struct range_error : error {
  using error::error;
};

// Malformed input document; `pointer` is a JSON-pointer-style path.
struct schema_error : error {
  std::string pointer;
  schema_error(const std::string& ptr, const std::string& msg)
      : error(msg + " (at " + ptr + ")"), pointer(ptr) {}
};

// Internal consistency failure: two independently computed quantities that
// must agree exactly do not. Always a bug, never a user error.
struct internal_error : error {
  using error::error;
};

}  // namespace weylq

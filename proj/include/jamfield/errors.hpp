#pragma once

#include <stdexcept>

namespace jamfield {

// Malformed input: bad JSON shape, unknown key, unknown enum value.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerically or physically invalid request (r <= 0, sample rate too low, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace jamfield

#pragma once

#include <stdexcept>
#include <string>

namespace linkgen {

// Malformed serialized data (files, one-hot rows, CSV).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Recognized container but unsupported format version.
struct VersionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite values where finite numerics are required (logits, gradients).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid run configuration (scenario violations, bad blocks, bad flags).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace linkgen

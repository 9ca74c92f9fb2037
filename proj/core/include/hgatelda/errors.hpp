#pragma once

#include <stdexcept>

namespace hgatelda {

/// Bad user-supplied input: unreadable files, malformed lines, unknown IDs,
/// inconsistent config. Maps to CLI exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical failure: training divergence or a non-finite value escaping a
/// kernel. Maps to CLI exit code 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hgatelda

#pragma once

#include <stdexcept>
#include <string>

namespace uniprompt {

// Base for everything this library throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition / API-contract violations: shape mismatch, out-of-range
// index, non-scalar loss, non-unit embedding, ...
struct contract_error : error {
    using error::error;
};

// NaN/Inf produced or consumed, degenerate normalization input.
struct numeric_error : error {
    using error::error;
};

// Invalid configuration values.
struct config_error : error {
    using error::error;
};

// Dataset-level problems: too few identities, empty split,
// degenerate batch, incomplete report.
struct data_error : error {
    using error::error;
};

// File I/O, parse and container-version failures.
struct io_error : error {
    using error::error;
};

}  // namespace uniprompt

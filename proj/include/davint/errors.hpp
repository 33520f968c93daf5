#pragma once

#include <stdexcept>
#include <string>

namespace davint {

/// Base class for every error raised by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed sequence text.
struct parse_error : error {
    using error::error;
};

/// A sequence term has value 0 (forbidden: 0 is never part of a minimal zero-sum sequence of length >= 2).
struct zero_value_error : parse_error {
    using parse_error::parse_error;
};

/// A sequence term has multiplicity 0.
struct zero_multiplicity_error : parse_error {
    using parse_error::parse_error;
};

/// An exact computation would leave the 128-bit integer budget.
struct overflow_error : error {
    using error::error;
};

/// Incompatible or unsupported congruence system.
struct conflict_error : error {
    using error::error;
};

/// An enumeration exceeded its configured budget.
struct budget_error : error {
    using error::error;
};

struct not_zero_sum_error : error {
    using error::error;
};

struct not_present_error : error {
    using error::error;
};

struct precondition_error : error {
    using error::error;
};

} // namespace davint

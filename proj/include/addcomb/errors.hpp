#pragma once

#include <stdexcept>
#include <string>

namespace addcomb {

/// Checked 64-bit arithmetic failed; the message names the operands.
class arithmetic_overflow : public std::overflow_error {
   public:
    using std::overflow_error::overflow_error;
};

/// A scan or evaluation would exceed its configured budget.
class budget_exceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A checkpoint file is missing fields, truncated, or belongs to a
/// different run; resuming from it would silently corrupt counts.
class checkpoint_invalid : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (set literal, polynomial, target file).
class parse_error : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// An internal cross-check failed. Must never fire.
class internal_error : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

}  // namespace addcomb

#pragma once

#include <stdexcept>
#include <string>

namespace inapprox {

/// Invalid argument to a library operation (bad descriptor kind, parameter
/// out of range, target reducing to denominator 1, ...).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Period detection ran out of its state budget.  Raised instead of ever
/// returning a wrong period.
struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive precision escalation hit its cap (value provably within
/// 2^-maxbits of a half-integer).
struct precision_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace inapprox

#pragma once

#include <stdexcept>
#include <string>

namespace pbessel {

/// Argument outside the domain an operation accepts (μ ≤ −1, x ≤ 0, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation that cannot produce a trustworthy number: overflow,
/// evaluation on the kernel diagonal, an uncalibrated grid, data touching
/// the grid boundary.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pbessel

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nis {

/// Bad argument value (out-of-range bound, malformed structure).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operands with incompatible dimensions.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A vector was expected to belong to a lattice and does not.
class MembershipError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An operation was called on an input that violates its precondition
/// (for instance locating a point in a fan that is not complete).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Data is well-formed but inconsistent with a required compatibility rule.
class CompatibilityError : public std::domain_error {
public:
    CompatibilityError(const std::string& what, std::size_t index)
        : std::domain_error(what), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

}  // namespace nis

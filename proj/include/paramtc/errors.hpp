#pragma once

#include <stdexcept>
#include <string>

namespace paramtc {

/// Base of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands live in different rings, modules or bundles over different bases.
struct DescriptorMismatch : Error {
    using Error::Error;
};

/// An operation that needs a homogeneous class got a mixed-degree one.
struct HomogeneityError : Error {
    using Error::Error;
};

/// Input outside the domain of an operation (wrong coefficients, bad rank, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Two bundle points that were expected to share a fiber do not.
struct NotSameFiber : Error {
    using Error::Error;
};

/// A projective representative with no coordinate above the cell tolerance.
struct DegenerateRepresentative : Error {
    using Error::Error;
};

/// Two rules disagree on an exact value. Indicates a bug or inconsistent flags.
struct ContradictionError : Error {
    using Error::Error;
};

}  // namespace paramtc

#pragma once

#include <stdexcept>
#include <string>

namespace orbcount {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain argument.
struct ArgumentError : Error {
    using Error::Error;
};

/// Operation is only implemented for a restricted set of degrees.
struct UnsupportedDegree : Error {
    using Error::Error;
};

/// The input violates a hypothesis of the counting theorem (reducible, not totally real, ...).
struct HypothesisViolation : Error {
    using Error::Error;
};

/// A caller-visible precondition that is not a plain argument check (e.g. nonmaximal order).
struct PreconditionError : Error {
    using Error::Error;
};

/// Enumeration would exceed the configured operation budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

/// Lattice census depth does not reach the monogenic order.
struct DepthInsufficient : Error {
    using Error::Error;
};

/// File could not be read or written.
struct IoError : Error {
    using Error::Error;
};

struct NetworkError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

/// Internal consistency check failed; always a bug, never user error.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

inline void ensure(bool cond, const std::string& what) {
    if (!cond) throw InvariantViolation(what);
}

}  // namespace orbcount

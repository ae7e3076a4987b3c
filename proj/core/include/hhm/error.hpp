#pragma once

#include <stdexcept>
#include <string>

namespace hhm {

/// Base class of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input (JSON, Cayley tables, CLI selections).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A constructed object fails a mathematical validator (not a group, not associative,
/// cocycle condition violated, not symmetric, not projective, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A computation would exceed the configured memory budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed; indicates a bug rather than bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace hhm

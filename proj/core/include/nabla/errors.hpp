#pragma once

#include <stdexcept>
#include <string>

namespace nabla {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// An identity check needed terms beyond what the operands carry.
class InsufficientPrecision : public Error {
public:
    using Error::Error;
};

/// Base for failures of the mathematics itself (surfaced verbatim by the CLI).
class DomainError : public Error {
public:
    using Error::Error;
};

class ZeroDivision : public DomainError {
public:
    using DomainError::DomainError;
};

/// The indicial factor vanishes at an exponent the recursion must determine.
class ResonantExponent : public DomainError {
public:
    using DomainError::DomainError;
};

/// A coefficient exponent does not lie on the solver's lattice.
class LatticeMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

/// A seeded coefficient at a non-resonant position contradicts the recursion.
class InconsistentSeed : public DomainError {
public:
    using DomainError::DomainError;
};

class DegreeMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

class NoSolution : public DomainError {
public:
    using DomainError::DomainError;
};

class PrerequisiteFailed : public DomainError {
public:
    using DomainError::DomainError;
};

/// Both configurations of a gluing carry a Z point.
class ZConflict : public DomainError {
public:
    using DomainError::DomainError;
};

class InvalidInput : public DomainError {
public:
    using DomainError::DomainError;
};

class IndexOutOfRange : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace nabla

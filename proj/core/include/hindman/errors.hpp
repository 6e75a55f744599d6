#pragma once

#include <stdexcept>
#include <string>

namespace hindman {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (zero where a
/// positive integer is required, a base below 2, a non-increasing list, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A finite solution has too few members for a backward map.
class ShortSolutionError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A result does not fit the 64-bit unsigned range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A table coloring was evaluated outside its declared window.
class WindowError : public Error {
public:
    using Error::Error;
};

/// Two members of a supposedly homogeneous set share a least base-3 exponent.
class ThinningError : public Error {
public:
    using Error::Error;
};

/// No alternating chain of the requested length exists.
class InterleaveError : public Error {
public:
    using Error::Error;
};

/// Too few complete exactly large chunks.
class ChunkError : public Error {
public:
    using Error::Error;
};

/// Composed reduction steps do not share a principle.
class CompositionError : public Error {
public:
    using Error::Error;
};

class BudgetError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Unknown reduction id or rule name.
class CatalogError : public Error {
public:
    using Error::Error;
};

}  // namespace hindman

#pragma once

#include <stdexcept>
#include <string>

namespace betaexp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An index or level exceeds the range covered by a finite table or horizon.
class RangeError : public Error {
public:
    using Error::Error;
};

/// A request would exceed a memory or search guard (level cap, tree depth).
class ResourceError : public Error {
public:
    using Error::Error;
};

/// An operation was invoked on an object in the wrong state for it.
class StateError : public Error {
public:
    using Error::Error;
};

} // namespace betaexp

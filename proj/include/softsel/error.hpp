#pragma once

#include <stdexcept>
#include <string>

namespace softsel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed PGM or CSV input.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure while reading or writing.
class IoError : public Error {
public:
    using Error::Error;
};

/// No in-mask pixel pair exists for a co-occurrence or difference matrix.
class EmptyMatrixError : public Error {
public:
    using Error::Error;
};

/// A cluster validity index is not defined for the given assignment.
class UndefinedIndexError : public Error {
public:
    using Error::Error;
};

}  // namespace softsel

#pragma once

#include <stdexcept>
#include <string>

namespace descm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A term list that does not describe an admissible potential.
class RejectedPotential : public Error {
  public:
    explicit RejectedPotential(const std::string& reason)
        : Error("rejected potential: " + reason) {}
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// An intermediate quantity would leave the double-precision range.
class OverflowError : public Error {
  public:
    using Error::Error;
};

class InvalidStripWidth : public Error {
  public:
    using Error::Error;
};

/// A diagonal weight underflowed to zero; the mesh is too wide.
class SingularWeight : public Error {
  public:
    using Error::Error;
};

class NotSymmetric : public Error {
  public:
    using Error::Error;
};

class NoConvergence : public Error {
  public:
    using Error::Error;
};

class LevelOutOfRange : public Error {
  public:
    using Error::Error;
};

class BracketFailure : public Error {
  public:
    using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
  public:
    using Error::Error;
};

/// Malformed input document.
class ParseError : public Error {
  public:
    using Error::Error;
};

}  // namespace descm

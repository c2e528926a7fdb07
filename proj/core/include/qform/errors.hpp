#pragma once

#include <stdexcept>
#include <string>

namespace qform {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (sextuples, form identifiers, residue classes).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that does not describe a valid positive-definite
/// integral lattice.
class InvalidForm : public Error {
 public:
  using Error::Error;
};

/// A corpus record failed validation. `what()` names the offending record.
class CorpusError : public Error {
 public:
  using Error::Error;
};

/// An intermediate value left the supported integer range. Raised instead
/// of silently wrapping.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated (e.g. n = 0 where n >= 1 is
/// required, non-prime p).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// No embedding of the labelled core lattice was found inside a form.
class CoreNotFound : public Error {
 public:
  using Error::Error;
};

/// A transcribed theorem recipe is internally inconsistent (guards overlap
/// or leave a gap, or a reassembled vector has the wrong norm).
class RecipeError : public Error {
 public:
  using Error::Error;
};

}  // namespace qform

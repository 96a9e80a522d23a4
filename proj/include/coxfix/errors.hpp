#pragma once

#include <stdexcept>
#include <string>

namespace coxfix {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed caller input: bad generator index, unknown catalog name, bad perm.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Matrix file parse failure; carries the 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A configured cap (ball size, face count, coefficient size) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A parabolic subgroup that was required to be finite is infinite (or too
/// large to decide under the configured cap).
class InfiniteParabolicError : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

/// An operation was called outside its contract (e.g. Eulerian test on a
/// non-graded poset, an empty interval).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Unsupported type lookups in the built-in classification data.
class UnsupportedTypeError : public Error {
 public:
  using Error::Error;
};

/// Contradicts known theory; indicates a bug in the core.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace coxfix

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fota {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The automaton graph or acceptance condition is malformed.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied data does not fit the operation (alphabet mismatch,
/// unknown symbol, malformed file).
class InputError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this kind of automaton.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured state or node budget was exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A cooperative cancellation request was observed.
class Cancelled : public Error {
 public:
  Cancelled() : Error("operation cancelled") {}
};

/// Syntax error in expression or lasso text, with a 0-based offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InputError(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A Kleene star occurred inside the body of an omega-B expression.
class StarFreeViolation : public ParseError {
 public:
  explicit StarFreeViolation(std::size_t position)
      : ParseError("star-free violation: '*' is not allowed under ^w",
                   position) {}
};

}  // namespace fota

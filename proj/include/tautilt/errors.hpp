#pragma once

#include <stdexcept>
#include <string>

namespace tautilt {

/** Base class for all library errors. */
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Malformed input: bad shapes, unknown names, invalid arguments. */
struct InvalidInputError : Error {
  using Error::Error;
};

/** Text input that does not parse; carries a 1-based line number when known. */
struct ParseError : Error {
  std::size_t line = 0;
  ParseError(const std::string& msg, std::size_t line_no = 0)
      : Error(line_no ? "line " + std::to_string(line_no) + ": " + msg : msg),
        line(line_no) {}
};

/** A relation violates admissibility (some summand path has length < 2). */
struct NonAdmissibleError : Error {
  using Error::Error;
};

/** Independent paths persist at the length cap: the quotient is not
    finite dimensional with nilpotent arrow ideal. */
struct InfiniteDimensionalError : Error {
  using Error::Error;
};

/** A configured resource cap (node count, dimension, enumeration size)
    was exceeded. */
struct CapExceededError : Error {
  using Error::Error;
};

/** A decision procedure exhausted its search budget without an answer. */
struct UndecidedError : Error {
  using Error::Error;
};

/** A mutation produced more than one candidate completion; flagged rather
    than silently resolved. */
struct AmbiguousCompletionError : Error {
  using Error::Error;
};

/** A lookup (semibrick, poset node) found no match. */
struct NotFoundError : Error {
  using Error::Error;
};

}  // namespace tautilt

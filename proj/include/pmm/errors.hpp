#pragma once

#include <stdexcept>
#include <string>

namespace pmm {

/// Base class of every domain error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A colour sequence is not a bijection on 1..n.
class NotABijection : public Error {
public:
    using Error::Error;
};

/// Two objects that must share the same board size n do not.
class SizeMismatch : public Error {
public:
    using Error::Error;
};

/// Two colourings that must assign the same position set do not.
class DomainMismatch : public Error {
public:
    using Error::Error;
};

/// A colouring required to be injective assigns one colour twice.
class NotInjective : public Error {
public:
    using Error::Error;
};

/// A numeric argument violates its documented range.
class OutOfRange : public Error {
public:
    using Error::Error;
};

/// An exhaustive sweep was requested above the configured cutoff.
class CutoffExceeded : public Error {
public:
    CutoffExceeded(int requested, int limit)
        : Error("exhaustive sweep for n=" + std::to_string(requested) +
                " exceeds cutoff " + std::to_string(limit)),
          requested_n(requested),
          cutoff(limit) {}

    int requested_n;
    int cutoff;
};

/// A feedback entry is outside 0..n, equals the impossible n-1, or the
/// vector as a whole is satisfiable by no codeword.
class MalformedFeedback : public Error {
public:
    using Error::Error;
};

/// A text input could not be parsed; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(long line_number, const std::string& reason)
        : Error("line " + std::to_string(line_number) + ": " + reason),
          line(line_number) {}

    long line;
};

}  // namespace pmm

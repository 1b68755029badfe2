#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace teamhyper {

/// Byte offsets into the parsed text, half-open.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, SourceSpan span)
      : Error(what + " at " + std::to_string(span.start) + ".." + std::to_string(span.end)),
        span_(span) {}

  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

/// The formula is outside the fragment an operation accepts.
class FragmentError : public Error {
 public:
  using Error::Error;
};

/// Configured size limits (oracle bounds, normal-form blow-up cap) exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// Malformed argument: empty loop, free trace variable, missing map entry.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace teamhyper

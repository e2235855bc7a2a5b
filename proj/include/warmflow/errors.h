#ifndef WARMFLOW_ERRORS_H_
#define WARMFLOW_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace warmflow {

// Caller passed data that violates an operation's precondition (length
// mismatch, non-conserving flow, infeasible start, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A 64-bit computation would have wrapped.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// The operation refuses an input that is valid but too large (brute-force
// oracles).
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The operation is not defined for this kind of input (e.g. exact expected
// cost of a generative distribution).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class ParseErrorKind {
  kUnknownLine,        // line starts with an unrecognized tag
  kMalformedLine,      // wrong token count for the tag
  kBadNumber,          // token is not a (nonnegative) integer
  kMissingHeader,      // data before the header line, or no header at all
  kDuplicateHeader,    // second header line
  kDuplicateTerminal,  // second source or sink declaration
  kMissingTerminal,    // no source or no sink declared
  kNodeOutOfRange,     // node id outside [1, n]
  kSelfLoop,           // arc with tail == head
  kSameTerminal,       // source and sink are the same node
  kCountMismatch,      // number of records differs from the header
  kBadIndex,           // edge index out of range or repeated
};

const char* to_string(ParseErrorKind kind);

// Malformed text. Line numbers are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        kind_(kind),
        line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

// A flow file does not fit the network it is read against.
class BindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace warmflow

#endif  // WARMFLOW_ERRORS_H_

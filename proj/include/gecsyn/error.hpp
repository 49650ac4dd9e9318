#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gecsyn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Empty sentence, empty corpus or empty dataset where content is required.
class EmptyInputError : public Error {
  public:
    using Error::Error;
};

/// Malformed input. `offset` is a byte offset for single-line parses, or a
/// 1-based line number for file parses (see `is_line`).
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::size_t offset, bool is_line = false)
        : Error(what + (is_line ? " (line " : " (byte offset ") + std::to_string(offset) + ")"),
          offset_(offset), is_line_(is_line) {}

    std::size_t offset() const { return offset_; }
    bool is_line() const { return is_line_; }

  private:
    std::size_t offset_;
    bool is_line_;
};

/// Inconsistent arguments, e.g. corpora of different lengths.
class InputError : public Error {
  public:
    using Error::Error;
};

class TuningError : public Error {
  public:
    using Error::Error;
};

class EmptyInventoryError : public Error {
  public:
    using Error::Error;
};

/// Failure of a corruption backend (external process died, bad response).
class BackendError : public Error {
  public:
    using Error::Error;
};

} // namespace gecsyn

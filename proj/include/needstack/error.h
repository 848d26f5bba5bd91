#ifndef NEEDSTACK_ERROR_H_
#define NEEDSTACK_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace needstack {

// Base class for all toolkit errors. The CLI maps subclasses to exit codes:
// ConfigError -> 1, everything else -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input. When the offending line is known it is carried along and
// prefixed to the message as "line N: ...".
class ParseError : public Error {
 public:
  ParseError(const std::string &message, std::size_t line = 0)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Input that parses but cannot be processed (empty corpus, seed not in the
// vocabulary, id sets that do not line up, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration value or unknown configuration key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace needstack

#endif  // NEEDSTACK_ERROR_H_

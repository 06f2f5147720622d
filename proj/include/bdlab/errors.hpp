#ifndef BDLAB_ERRORS_HPP
#define BDLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bdlab {

// Malformed or inconsistent experiment configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its domain (CLI exit code 3).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A table rate model was queried at a state it does not cover.
class OutOfRangeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Filesystem failures; the message always names the offending path (CLI exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bdlab

#endif  // BDLAB_ERRORS_HPP

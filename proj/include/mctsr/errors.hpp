#pragma once

#include <stdexcept>
#include <string>

namespace mctsr {

// Base class for all engine errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// A referenced entity (node, prompt, file section) does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// The operation is not valid in the current state.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

// A payload could not be parsed against its wire schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Every evaluation sample failed to parse.
class EvaluationFailedError : public Error {
 public:
  using Error::Error;
};

// Meta-prompt synthesis produced no usable text.
class SynthesisFailedError : public Error {
 public:
  using Error::Error;
};

// A scripted provider ran out of rules or hit a rule mismatch.
class ScriptExhaustedError : public Error {
 public:
  using Error::Error;
};

// The model endpoint failed after all retries.
class ProviderError : public Error {
 public:
  ProviderError(const std::string& what, int status, int attempts)
      : Error(what), status(status), attempts(attempts) {}

  int status = 0;    // last HTTP status; 0 for transport-level failures
  int attempts = 0;  // total requests issued, including retries
};

// Filesystem-level failure (missing file, unwritable directory).
class IoError : public Error {
 public:
  using Error::Error;
};

// A configuration document is missing, malformed, or inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mctsr

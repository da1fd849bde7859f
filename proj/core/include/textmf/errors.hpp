#pragma once

#include <stdexcept>
#include <string>

namespace textmf {

/// Invalid arguments or malformed input data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values or failed numeric routines.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failures, always carrying the offending path in the message.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// HTTP transport failures (unreachable host, non-2xx status).
class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested remote resource does not exist.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace textmf

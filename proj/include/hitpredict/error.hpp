#pragma once

#include <stdexcept>
#include <string>

namespace hitpredict {

// Error taxonomy shared by the library and the CLI. The kind decides the
// process exit code: data problems exit 1, environment problems exit 2.
enum class ErrorKind {
  validation,   // a value violates a documented range or invariant
  schema,       // a header/column/feature-name mismatch
  data,         // unusable input (empty dataset, single class, bad row)
  parameter,    // a caller-supplied parameter is out of contract
  numeric,      // a computation produced non-finite values
  io,           // missing file or directory, unwritable output
  fixture_miss, // replay mode and no stored response for a request
  transport,    // HTTP-level failure (retryable in live mode)
  credentials,  // live mode without usable credentials
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  int exit_code() const noexcept {
    switch (kind_) {
      case ErrorKind::io:
      case ErrorKind::fixture_miss:
      case ErrorKind::transport:
      case ErrorKind::credentials:
        return 2;
      default:
        return 1;
    }
  }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace hitpredict

#pragma once

#include <stdexcept>
#include <string>

namespace hashnet {

// Process exit codes used by the CLI.
enum class ExitCode : int {
  kSuccess = 0,
  kConfig = 2,
  kData = 3,
  kInvariant = 4,
};

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual ExitCode code() const noexcept = 0;
};

// Bad flags, missing files, out-of-range parameters.
class ConfigError : public Error {
public:
  using Error::Error;
  ExitCode code() const noexcept override { return ExitCode::kConfig; }
};

// Malformed corpus rows, unreadable lexicons, unknown formats in input data.
class DataError : public Error {
public:
  using Error::Error;
  ExitCode code() const noexcept override { return ExitCode::kData; }
};

// A result failed one of its structural checks.
class InvariantError : public Error {
public:
  using Error::Error;
  ExitCode code() const noexcept override { return ExitCode::kInvariant; }
};

}  // namespace hashnet

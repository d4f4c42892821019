#pragma once

#include <stdexcept>
#include <string>

namespace korobov {

/// Base class for all library failures. `exit_code()` is the CLI status the
/// failure maps to.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept = 0;
  virtual const char* kind() const noexcept = 0;
};

/// Invalid parameters, malformed JSON, unknown weight-family kinds.
class ConfigError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
  const char* kind() const noexcept override { return "config"; }
};

/// A hard resource cap (series terms, enumeration nodes, search size) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
  const char* kind() const noexcept override { return "cap_exceeded"; }
};

/// A numerical certificate could not be established.
class CertificateError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
  const char* kind() const noexcept override { return "certificate"; }
};

}  // namespace korobov

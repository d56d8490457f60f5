#ifndef AGGINT_ERROR_HPP_
#define AGGINT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace aggint {

// Process exit codes used by the command-line front end. Each error class
// below maps onto exactly one of them.
enum class ExitCode : int {
  ok = 0,
  usage = 1,  // command line (unknown flag or figure); raised by the front end only
  config = 2,
  numeric = 3,
  validation = 4,
  io = 5,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

// Invalid scenario parameters, inconsistent scheme setup, malformed files.
class ConfigError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::config; }
};

// A function was called outside its mathematical domain (r <= 0, x <= 0 ...).
class DomainError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::config; }
};

// Fewer samples or points than an estimator needs.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::config; }
};

// Quadrature / inversion / differentiation did not reach its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::numeric; }
};

// Raised by cross-checks; also used when two estimates cannot be compared.
class ValidationError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::validation; }
};

class IoError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::io; }
};

}  // namespace aggint

#endif  // AGGINT_ERROR_HPP_

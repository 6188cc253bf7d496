#pragma once

#include <stdexcept>
#include <string>

namespace nhprobe {

enum class ErrorKind {
  InvalidArgument,
  NotPsd,
  Capacity,
  NotTopological,
  SingularParameter,
  Underflow,
  Unsupported,
};

const char* to_string(ErrorKind kind);

/// Base class for every error raised by the library. The CLI maps these to
/// exit code 3; configuration problems use ConfigError instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class NotPsdError : public Error {
 public:
  NotPsdError(double eigenvalue, double tolerance);
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

inline Error invalid_argument(const std::string& what) {
  return Error(ErrorKind::InvalidArgument, what);
}

}  // namespace nhprobe

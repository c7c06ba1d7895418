#pragma once

#include <stdexcept>
#include <string>

namespace sojourn {

enum class ErrorKind {
  InvalidSpace,
  DegreeNotInLambda,
  Domain,
  UnsupportedFamily,
  Regime,
  Factorization,
  Convergence,
  Config,
  Io,
};

/// Library-wide exception type. The kind maps 1:1 onto the C API status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::move(msg)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace sojourn

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace l2ext {

enum class ErrorKind {
  NonIntegrableWeight,
  LimitUndefined,
  Precondition,
  Admissibility,
  Construction,
  Domain,
  Consistency,
  Convergence,
  Singularity,
  UnsupportedDomain,
  ClassViolation,
  PositivityViolation,
  DegreeCap,
  Range,
  Io,
  Config,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace l2ext

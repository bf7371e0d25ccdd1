#include "l2ext/error.hpp"

namespace l2ext {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonIntegrableWeight: return "non-integrable-weight";
    case ErrorKind::LimitUndefined: return "limit-undefined";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Admissibility: return "admissibility";
    case ErrorKind::Construction: return "construction";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Consistency: return "internal-consistency";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Singularity: return "singularity";
    case ErrorKind::UnsupportedDomain: return "unsupported-domain";
    case ErrorKind::ClassViolation: return "class-violation";
    case ErrorKind::PositivityViolation: return "positivity-violation";
    case ErrorKind::DegreeCap: return "degree-cap";
    case ErrorKind::Range: return "range";
    case ErrorKind::Io: return "io";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace l2ext

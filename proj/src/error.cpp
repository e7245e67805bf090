#include "qwalk/error.hpp"

namespace qwalk {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput:
      return "invalid-input";
    case ErrorKind::GuardViolation:
      return "guard-violation";
    case ErrorKind::IncommensurateRingPhase:
      return "incommensurate-ring-phase";
    case ErrorKind::SizeLimit:
      return "size-limit";
    case ErrorKind::Internal:
      return "internal-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qwalk

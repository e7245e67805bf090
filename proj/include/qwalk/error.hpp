#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

enum class ErrorKind {
  InvalidInput,
  GuardViolation,
  IncommensurateRingPhase,
  SizeLimit,
  Internal,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers (the CLI in
/// particular) which failure class occurred.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace qwalk

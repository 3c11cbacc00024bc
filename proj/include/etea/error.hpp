#pragma once

#include <stdexcept>
#include <string>

namespace etea {

enum class ErrorCode {
  InvalidArgument,
  OutOfBounds,
  Ordering,
  Configuration,
  Parse,
  Protocol,
  Structural,
  UndefinedCorrelation,
  Integrity,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the engine carries one of the codes above so the C
// layer can map it onto an etea_status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace etea

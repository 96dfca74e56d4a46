#pragma once

#include <stdexcept>
#include <string>

namespace conehull {

enum class ErrorKind {
  kDegenerateInput,
  kTiedFirstCoordinate,
  kOriginNotInterior,
  kNonGeneric,
  kNotPointed,
  kIterationCap,
  kSingularFrame,
  kZeroVolume,
  kEmptyWindow,
  kConfigError,
  kIoError,
  kInvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace conehull

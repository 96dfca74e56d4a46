#include "conehull/errors.hpp"

namespace conehull {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDegenerateInput: return "DegenerateInput";
    case ErrorKind::kTiedFirstCoordinate: return "TiedFirstCoordinate";
    case ErrorKind::kOriginNotInterior: return "OriginNotInterior";
    case ErrorKind::kNonGeneric: return "NonGeneric";
    case ErrorKind::kNotPointed: return "NotPointed";
    case ErrorKind::kIterationCap: return "IterationCap";
    case ErrorKind::kSingularFrame: return "SingularFrame";
    case ErrorKind::kZeroVolume: return "ZeroVolume";
    case ErrorKind::kEmptyWindow: return "EmptyWindow";
    case ErrorKind::kConfigError: return "ConfigError";
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace conehull

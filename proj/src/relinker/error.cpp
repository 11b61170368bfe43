#include "relinker/error.hpp"

namespace relinker {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyQuery: return "EmptyQuery";
    case ErrorCode::Provider: return "Provider";
    case ErrorCode::MalformedUri: return "MalformedUri";
    case ErrorCode::KeyMismatch: return "KeyMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
  }
  return "Unknown";
}

}  // namespace relinker

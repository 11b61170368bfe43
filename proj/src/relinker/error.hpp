#pragma once

#include <stdexcept>
#include <string>

namespace relinker {

enum class ErrorCode {
  InvalidArgument,
  Io,
  Parse,
  EmptyCorpus,
  EmptyQuery,
  Provider,
  MalformedUri,
  KeyMismatch,
  OutOfRange,
};

const char* error_code_name(ErrorCode code);

// All library failures are reported as relinker::Error; the C API maps the
// code onto rl_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by DfProvider implementations; generate_ls lets it propagate.
class ProviderError : public Error {
 public:
  explicit ProviderError(const std::string& message)
      : Error(ErrorCode::Provider, message) {}
};

}  // namespace relinker

#pragma once

#include <stdexcept>
#include <string>

namespace symvec {

enum class ErrorKind {
  Syntax,
  Io,
  Format,
  Config,
  OutOfVocabulary,
  EmptyVocabulary,
  EmptyCandidates,
  DimensionMismatch,
  Numeric,
  InvalidArgument,
};

/// Every failure raised by the library carries a kind so the C API can map it
/// onto a stable status code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace symvec

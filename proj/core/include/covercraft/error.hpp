#pragma once

#include <stdexcept>
#include <string>

namespace covercraft {

enum class ErrorKind {
  kArgument,
  kModelInvalid,
  kTie,
  kPrecondition,
  kCertificateFailure,
  kNumericalFailure,
  kResourceBudget,
  kParse,
};

// Exit code used by the CLI for each kind.
int exit_code(ErrorKind kind);
const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message, std::string witness = {})
      : std::runtime_error(message), kind_(kind), witness_(std::move(witness)) {}

  ErrorKind kind() const { return kind_; }
  // Machine-readable evidence (a group element, a vertex, an attained distance).
  const std::string& witness() const { return witness_; }

private:
  ErrorKind kind_;
  std::string witness_;
};

}  // namespace covercraft

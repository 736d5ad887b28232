#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geist {

enum class ErrorKind {
  AxisMismatch,
  DatasetMismatch,
  DomainError,
  BoundsError,
  LengthError,
  NonFinite,
  EmptyLevel,
  DuplicateRegistration,
  CycleError,
  NoPath,
  AmbiguousPath,
  NotRegistered,
  RegistryFrozen,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Library-level failure. Every error carries a kind so callers (the
/// evaluator, the mutation harness) can classify it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace geist

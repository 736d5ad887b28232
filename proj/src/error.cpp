#include "geist/error.hpp"

namespace geist {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AxisMismatch: return "AxisMismatch";
    case ErrorKind::DatasetMismatch: return "DatasetMismatch";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::BoundsError: return "BoundsError";
    case ErrorKind::LengthError: return "LengthError";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::EmptyLevel: return "EmptyLevel";
    case ErrorKind::DuplicateRegistration: return "DuplicateRegistration";
    case ErrorKind::CycleError: return "CycleError";
    case ErrorKind::NoPath: return "NoPath";
    case ErrorKind::AmbiguousPath: return "AmbiguousPath";
    case ErrorKind::NotRegistered: return "NotRegistered";
    case ErrorKind::RegistryFrozen: return "RegistryFrozen";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace geist

#pragma once

#include <stdexcept>
#include <string>

namespace tbsurf {

enum class ErrorKind {
  NotOnFlipLocus,
  ZeroDivisor,
  DomainError,
  DegenerateRicci,
  SingularJacobian,
  PoleError,
  IllConditioned,
  MalformedInput,
  NonFinite,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotOnFlipLocus: return "NotOnFlipLocus";
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateRicci: return "DegenerateRicci";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

/// Single exception type for the library; callers branch on kind().
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tbsurf

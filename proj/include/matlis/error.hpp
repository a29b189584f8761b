#pragma once

#include <stdexcept>
#include <string>

namespace matlis {

enum class Errc {
  DomainError,
  NotLocal,
  BoundNotCertified,
  InconsistentPresentation,
  DimensionMismatch,
  ParentMismatch,
  NotASubmodule,
  NotEquivariant,
  NotUniserial,
  NotInjectiveAmbient,
  NotFree,
  ParseError,
  ValidationError,
  UnknownModuleRef,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DomainError: return "DomainError";
    case Errc::NotLocal: return "NotLocal";
    case Errc::BoundNotCertified: return "BoundNotCertified";
    case Errc::InconsistentPresentation: return "InconsistentPresentation";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ParentMismatch: return "ParentMismatch";
    case Errc::NotASubmodule: return "NotASubmodule";
    case Errc::NotEquivariant: return "NotEquivariant";
    case Errc::NotUniserial: return "NotUniserial";
    case Errc::NotInjectiveAmbient: return "NotInjectiveAmbient";
    case Errc::NotFree: return "NotFree";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::UnknownModuleRef: return "UnknownModuleRef";
  }
  return "Error";
}

/// Every failure raised by the library. The code names the violated contract.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace matlis

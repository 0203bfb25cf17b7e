#pragma once

#include <stdexcept>
#include <string>

namespace ncas {

enum class ErrorKind {
  UnboundParameter,
  DenominatorVanishes,
  AssumptionViolated,
  ZeroRadicand,
  SqrtTowerTooDeep,
  DivisionByZero,
  InvalidSymbol,
  DegreeTooSmall,
  ArityMismatch,
  ZeroVector,
  SyntaxError,
  MixedDegree,
  UnknownSymbol,
  NonScalarEntry,
  WrongDegree,
  ZeroInput,
  SingularMatrix,
  NotTwistedSuperpotential,
  NotStandard,
  NoSolution,
  DependentRelations,
  NoPotential,
  PointNotOnComponent,
  UnknownType,
  InvalidPair,
  TypeMismatch,
  InvalidSequence,
  CaseSplitDepth,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnboundParameter: return "UnboundParameter";
    case ErrorKind::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorKind::AssumptionViolated: return "AssumptionViolated";
    case ErrorKind::ZeroRadicand: return "ZeroRadicand";
    case ErrorKind::SqrtTowerTooDeep: return "SqrtTowerTooDeep";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InvalidSymbol: return "InvalidSymbol";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::MixedDegree: return "MixedDegree";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::NonScalarEntry: return "NonScalarEntry";
    case ErrorKind::WrongDegree: return "WrongDegree";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NotTwistedSuperpotential: return "NotTwistedSuperpotential";
    case ErrorKind::NotStandard: return "NotStandard";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::DependentRelations: return "DependentRelations";
    case ErrorKind::NoPotential: return "NoPotential";
    case ErrorKind::PointNotOnComponent: return "PointNotOnComponent";
    case ErrorKind::UnknownType: return "UnknownType";
    case ErrorKind::InvalidPair: return "InvalidPair";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::InvalidSequence: return "InvalidSequence";
    case ErrorKind::CaseSplitDepth: return "CaseSplitDepth";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ncas

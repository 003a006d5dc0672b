#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catfm {

enum class ErrorKind {
  // category axioms
  MissingIdentity,
  UnitLawViolation,
  AssociativityViolation,
  DanglingReference,
  CompositionUndefined,
  CompositeHomMismatch,
  DuplicateName,
  UnknownObject,
  UnknownMorphism,
  BudgetExceeded,
  // functors
  IdentityNotPreserved,
  CompositionNotPreserved,
  DomCodMismatch,
  IncompleteMapping,
  SourceTargetMismatch,
  NotFullEmbedding,
  // set-valued functors
  InvalidSetFunctor,
  VarianceMismatch,
  BaseMismatch,
  EnumerationBudgetExceeded,
  NotIdeal,
  ExtensionMismatch,
  // multimodal
  NoDecodableObject,
  ChainMismatch,
  // builders
  ComposabilityConflict,
  NotPSD,
  InvalidDistribution,
  ObjectBudgetExceeded,
  // plumbing
  ParseError,
  IoError,
  InvalidArgument,
  InternalError,
};

std::string_view to_string(ErrorKind kind);

/// Structured failure: a kind plus the names of the objects or morphisms that
/// witness it. The message is a human-readable rendering of both.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::vector<std::string> witnesses, const std::string& detail = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witnesses_;
  std::string detail_;
};

}  // namespace catfm

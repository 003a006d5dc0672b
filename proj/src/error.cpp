#include "catfm/error.hpp"

namespace catfm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingIdentity: return "MissingIdentity";
    case ErrorKind::UnitLawViolation: return "UnitLawViolation";
    case ErrorKind::AssociativityViolation: return "AssociativityViolation";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::CompositionUndefined: return "CompositionUndefined";
    case ErrorKind::CompositeHomMismatch: return "CompositeHomMismatch";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::UnknownMorphism: return "UnknownMorphism";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::IdentityNotPreserved: return "IdentityNotPreserved";
    case ErrorKind::CompositionNotPreserved: return "CompositionNotPreserved";
    case ErrorKind::DomCodMismatch: return "DomCodMismatch";
    case ErrorKind::IncompleteMapping: return "IncompleteMapping";
    case ErrorKind::SourceTargetMismatch: return "SourceTargetMismatch";
    case ErrorKind::NotFullEmbedding: return "NotFullEmbedding";
    case ErrorKind::InvalidSetFunctor: return "InvalidSetFunctor";
    case ErrorKind::VarianceMismatch: return "VarianceMismatch";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case ErrorKind::NotIdeal: return "NotIdeal";
    case ErrorKind::ExtensionMismatch: return "ExtensionMismatch";
    case ErrorKind::NoDecodableObject: return "NoDecodableObject";
    case ErrorKind::ChainMismatch: return "ChainMismatch";
    case ErrorKind::ComposabilityConflict: return "ComposabilityConflict";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::InvalidDistribution: return "InvalidDistribution";
    case ErrorKind::ObjectBudgetExceeded: return "ObjectBudgetExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

namespace {

std::string render(ErrorKind kind, const std::vector<std::string>& witnesses,
                   const std::string& detail) {
  std::string out(to_string(kind));
  out += '(';
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (i) out += ", ";
    out += witnesses[i];
  }
  out += ')';
  if (!detail.empty()) {
    out += ": ";
    out += detail;
  }
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::vector<std::string> witnesses, const std::string& detail)
    : std::runtime_error(render(kind, witnesses, detail)),
      kind_(kind),
      witnesses_(std::move(witnesses)),
      detail_(detail) {}

}  // namespace catfm

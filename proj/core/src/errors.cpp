// Copyright 2026 The uicheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "uicheck/errors.hpp"

namespace uic {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::MissingTailBound: return "MissingTailBound";
    case ErrorKind::Normalization: return "NormalizationError";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::TailBound: return "TailBoundError";
    case ErrorKind::SandwichViolation: return "SandwichViolation";
    case ErrorKind::InconsistentProfiles: return "InconsistentProfiles";
    case ErrorKind::UnsupportedIntegrand: return "UnsupportedIntegrand";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorKind::BudgetViolation: return "BudgetViolation";
    case ErrorKind::WitnessViolation: return "WitnessViolation";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnknownFunction: return "UnknownFunction";
    case ErrorKind::Arity: return "ArityError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::DivByZero: return "DivByZero";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::JsonSyntax: return "JsonSyntaxError";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::UnresolvedName: return "UnresolvedName";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnknownPlugin: return "UnknownPlugin";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace uic

// Copyright 2026 The cstar-mixing Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cstar {

enum class ErrorKind {
  InvalidArgument,
  ShapeMismatch,
  NotHermitian,
  NotUnital,
  NotHermitianPreserving,
  NotPositive,
  NotCompletelyPositive,
  NotStochastic,
  RequiresCP,
  SingularNormalization,
  NumericalDegeneracy,
  EigensolverFailure,
  DefectivePeripheral,
  MethodDisagreement,
  InvariantStateMismatch,
  ImplicationViolation,
  EquivalenceViolation,
  NotInvariant,
  NotCoprime,
  InvalidStochastic,
  UnknownTheorem,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the CLI
/// exit-code mapping) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::NotHermitianPreserving: return "NotHermitianPreserving";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorKind::NotStochastic: return "NotStochastic";
    case ErrorKind::RequiresCP: return "RequiresCP";
    case ErrorKind::SingularNormalization: return "SingularNormalization";
    case ErrorKind::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorKind::EigensolverFailure: return "EigensolverFailure";
    case ErrorKind::DefectivePeripheral: return "DefectivePeripheral";
    case ErrorKind::MethodDisagreement: return "MethodDisagreement";
    case ErrorKind::InvariantStateMismatch: return "InvariantStateMismatch";
    case ErrorKind::ImplicationViolation: return "ImplicationViolation";
    case ErrorKind::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::InvalidStochastic: return "InvalidStochastic";
    case ErrorKind::UnknownTheorem: return "UnknownTheorem";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace cstar

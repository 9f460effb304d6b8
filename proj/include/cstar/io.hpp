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

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cstar/mixing.hpp"
#include "cstar/verify.hpp"

namespace cstar {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "0.1.0";

/// A parsed input file.  `state` is empty when the file omits it.
struct SystemFile {
  MarkovOperator op;
  std::optional<State> state;
  MixingConfig config;
  /// The "config" object exactly as given (empty object when absent).
  Json overrides = Json::object();
};

/// Parses the JSON text of a system file.  Throws ParseError with the line
/// and column of malformed JSON, ValidationError naming the offending field.
/// Superoperator input is Choi-tested first and falls back to sampled
/// positivity when it is not CP.
SystemFile parse_system(std::string_view text);
SystemFile load_system(const std::string& path);

/// The file's state, or the unique invariant state when it has none.
/// Throws ValidationError when the file has no state and the invariant state
/// is not unique.
DynamicalSystem resolve_system(const SystemFile& file);

Json complex_to_json(Complex z);
Json matrix_to_json(const CMatrix& m);
Json real_matrix_to_json(const RMatrix& m);

/// Operator in its original representation (Kraus, stochastic or the full
/// superoperator matrix).
Json operator_to_json(const MarkovOperator& t);
Json state_to_json(const Functional& phi);
Json system_to_json(const MarkovOperator& t, const std::optional<State>& phi, const Json& config = Json::object());

Json config_to_json(const MixingConfig& cfg);
/// Applies the keys of `overrides` to `cfg`; unknown keys and non-positive
/// tolerances throw ValidationError.
void apply_config(MixingConfig& cfg, const Json& overrides, const std::string& where = "config");

Json report_to_json(const MixingReport& r, const Json& input);
Json verification_to_json(const VerificationRecord& v);
Json probe_to_json(const ProbeResult& p);

/// Pretty-printed JSON with a trailing newline.
void write_json(const std::string& path, const Json& j);

}  // namespace cstar

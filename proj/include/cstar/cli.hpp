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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cstar/error.hpp"

namespace cstar {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitDisagreement = 3;
inline constexpr int kExitNumerical = 4;

int exit_code(ErrorKind kind);

struct TolOverrides {
  std::optional<double> tol_spectral;
  std::optional<std::uint64_t> seed;
};

struct ClassifyOptions {
  std::string input;
  /// Defaults to the input path with ".report.json" in place of ".json".
  std::string report;
  TolOverrides overrides;
};

struct VerifyOptions {
  std::string theorem;
  std::vector<int> shape{2};
  int trials = 200;
  std::uint64_t seed = 0;
  /// Defaults to verify_<theorem>_<shape>_seed<seed>.json.
  std::string out;
  int threads = 0;
};

struct ExampleOptions {
  /// rank-one, rotation or markov-chain.
  std::string name;
  int d = 0;  // 0 picks 8 (rank-one) or 12 (rotation)
  int k = 5;
  std::vector<double> p{0.7, 0.3, 0.4, 0.6};
  std::vector<double> q{0.5, 0.5};
  int length = 3;
  /// System file; defaults to example_<name>.json.
  std::string out;
  TolOverrides overrides;
};

struct ProbeOptions {
  std::vector<int> shape{2};
  int trials = 500;
  std::uint64_t seed = 0;
  /// Defaults to probe_swm_gap_<shape>_seed<seed>.json.
  std::string out;
  int threads = 0;
};

/// Each command reports errors on `err` and returns the process exit code.
int cmd_classify(const ClassifyOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);
int cmd_example(const ExampleOptions& opt, std::ostream& out, std::ostream& err);
int cmd_probe(const ProbeOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace cstar

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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cstar/mixing.hpp"

namespace cstar {

/// The equivalences and implications checked on random ensembles.
enum class Theorem {
  /// fixed-space criterion vs norm-Cesaro and state-averaged estimators.
  StrictErgodicity,
  /// spectral vs tensor strict ergodicity vs norm-Cesaro surrogate.
  StrictWeakMixing,
  /// weak mixing vs ergodicity of the tensor system.
  WeakMixingTensor,
  /// strict weak mixing excludes peripheral dual eigenpairs.
  PeripheralObstruction,
  /// Cesaro of norms <=> norm limit => phi-ergodic => state limit.
  PhiErgodicity,
  /// strict weak mixing implies weak mixing.
  SwmImpliesWm,
};

std::string_view theorem_name(Theorem t);
/// Throws UnknownTheorem.
Theorem theorem_from_name(std::string_view name);
std::vector<std::string> theorem_names();

struct InstanceOutcome {
  bool applicable = true;
  bool holds = true;
  std::vector<std::pair<std::string, std::string>> conditions;
  std::string detail;
};

InstanceOutcome verify_instance(Theorem t, const DynamicalSystem& sys, const MixingConfig& cfg = {});

/// Trial i of an ensemble: seed + i, kraus_count 1 + i % 3, and the
/// canonical invariant state.
struct EnsembleMember {
  int trial = 0;
  std::uint64_t seed = 0;
  int kraus_count = 1;
  DynamicalSystem system;
};

EnsembleMember ensemble_member(const AlgebraShape& shape, std::uint64_t seed, int trial);

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string family;
  bool applicable = true;
  bool holds = true;
  std::vector<std::pair<std::string, std::string>> conditions;
  std::string detail;
};

struct Counterexample {
  int trial = 0;
  std::uint64_t seed = 0;
  MarkovOperator op;
  State state;
  std::string detail;
};

struct VerificationRecord {
  Theorem theorem = Theorem::StrictErgodicity;
  AlgebraShape shape{std::vector<int>{1}};
  int trials = 0;
  std::uint64_t seed = 0;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::vector<TrialRecord> records;
  std::optional<Counterexample> counterexample;
  MixingConfig config;
};

/// CSTAR_MIXING_THREADS when set, else the hardware concurrency.
int default_threads();

/// Trials run concurrently and merge in trial order; `threads` <= 0 means
/// default_threads().
VerificationRecord verify_theorem(Theorem t, const AlgebraShape& shape, int trials, std::uint64_t seed,
                                  const MixingConfig& cfg = {}, int threads = 0);

struct ProbeRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string family;
  bool weakly_mixing = false;
  bool strictly_ergodic = false;
  bool strictly_weak_mixing = false;
  bool faithful_state = true;
  bool candidate = false;
  bool confirmed = false;
  std::string error;
};

struct ProbeResult {
  AlgebraShape shape{std::vector<int>{1}};
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<ProbeRecord> records;
  /// Candidates that did not survive the 10x tighter re-check.
  int rejected_candidates = 0;
  std::optional<Counterexample> counterexample;
  MixingConfig config;
};

/// Random search for a system that is weakly mixing and strictly ergodic
/// without being strictly weak mixing.  Families cycle through generic
/// channels, channels absorbed by a proper corner (non-faithful invariant
/// state) and small perturbations of unitary conjugations.
ProbeResult probe_swm_gap(const AlgebraShape& shape, int trials, std::uint64_t seed, const MixingConfig& cfg = {},
                          int threads = 0);

}  // namespace cstar

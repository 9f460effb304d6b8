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
#include <vector>

#include "cstar/channel.hpp"
#include "cstar/sequences.hpp"
#include "cstar/spectral.hpp"

namespace cstar {

struct MixingConfig {
  SpectralConfig spectral;
  /// Spectral residuals: invariance of phi, basis-pair correlations.
  double residual_tol = 1e-8;
  /// Loose estimator threshold (correlation averages and density-zero tests).
  double estimator_tol = 1e-3;
  /// "Already negligible" threshold for the decay tests.
  double decay_tol = 1e-6;
  int horizon = 4096;
  int exact_horizon = 1024;
  int samples = 5;
  std::uint64_t seed = 0;
  /// Throw MethodDisagreement / ImplicationViolation from the individual
  /// checks.  classify and the verifiers turn this off and report instead.
  bool strict = true;

  /// Every tolerance divided by `factor`.
  MixingConfig tightened(double factor) const;
};

enum class VerdictValue { True, False, Unsupported };

struct Verdict {
  VerdictValue value = VerdictValue::False;
  std::string reason;

  static Verdict of(bool b) { return {b ? VerdictValue::True : VerdictValue::False, {}}; }
  static Verdict unsupported(std::string why) { return {VerdictValue::Unsupported, std::move(why)}; }
  bool is_true() const noexcept { return value == VerdictValue::True; }
  bool is_false() const noexcept { return value == VerdictValue::False; }
  bool supported() const noexcept { return value != VerdictValue::Unsupported; }
};

std::string to_string(const Verdict& v);

/// A state-preserving system (A, phi, T).
class DynamicalSystem {
 public:
  /// Throws ShapeMismatch, or NotInvariant when ||phi o T - phi||_1 > tol.
  DynamicalSystem(MarkovOperator t, State phi, double tol = 1e-8);

  const AlgebraShape& shape() const noexcept { return t_.shape(); }
  const MarkovOperator& op() const noexcept { return t_; }
  const State& state() const noexcept { return phi_; }
  double invariance_residual() const noexcept { return residual_; }

 private:
  MarkovOperator t_;
  State phi_;
  double residual_ = 0.0;
};

/// (A (x) A, phi (x) phi, T (x) T); RequiresCP unless T is CP.
DynamicalSystem tensor_system(const DynamicalSystem& sys);

/// phi_tr o C with C the fixed-space projection: an invariant state that
/// equals the unique one whenever the invariant state is unique.
State canonical_invariant_state(const MarkovOperator& t, const SpectralConfig& cfg = {});

/// One estimator sample: the monitored quantity at the dyadic checkpoints.
struct Trace {
  std::string label;
  std::vector<int> n;
  std::vector<double> value;
  bool tends_to_zero = false;
};

struct EstimatorResult {
  /// True iff every sample tends to zero.
  bool verdict = false;
  std::vector<Trace> traces;
};

/// sup over (N/2, N] against 0.75 times sup over (N/4, N/2], or <= tol.
/// values[n-1] is the quantity at n.
bool envelope_decrease(const std::vector<double>& values, double tol);

struct BasisPairWitness {
  int x_index = 0;
  int y_index = 0;
  double residual = 0.0;
};

struct ErgodicResult {
  Verdict verdict;
  double max_residual = 0.0;
  std::optional<BasisPairWitness> witness;
  EstimatorResult estimator;
  bool agree = true;
};

struct StrictErgodicResult {
  Verdict verdict;
  int fixed_space_dim = 0;
  int defect_rank = 0;
  int invariant_state_count = 0;
  /// ||psi - phi||_1 for the unique invariant state psi (0 when not unique).
  double state_distance = 0.0;
  EstimatorResult norm_estimator;
  EstimatorResult state_estimator;
  bool agree = true;
  std::string disagreement;
};

struct WeakMixingResult {
  Verdict verdict;
  /// Ergodicity of the tensor system (primary route).
  Verdict tensor_route;
  double tensor_residual = 0.0;
  /// Direct criterion on A: ergodic and every peripheral projection at
  /// alpha != 1 is invisible to phi.
  bool peripheral_route = false;
  double peripheral_residual = 0.0;
  /// Mean of |phi(y T^k x) - phi(y)phi(x)|^2 over the horizon.
  EstimatorResult estimator;
  /// All three density-zero conditions agreed on every sample.
  bool kvn_consistent = true;
  bool agree = true;
  std::string disagreement;
};

struct StrictWeakMixingResult {
  Verdict verdict;
  bool spectral_route = false;
  Verdict tensor_route;
  int tensor_fixed_space_dim = 0;
  /// (1/n) sum_{k<n} ||T^k x - phi(x) 1||.
  EstimatorResult estimator;
  bool agree = true;
  std::string disagreement;
};

struct ExactResult {
  Verdict verdict;
  bool power_limit_converges = false;
  std::vector<Complex> offending;
  /// max-entry distance between the power limit and x -> phi(x) 1.
  double limit_distance = 0.0;
  /// ||dual^n psi - psi(1) phi||_1.
  EstimatorResult estimator;
  bool agree = true;
};

struct PhiErgodicResult {
  Verdict verdict;
  bool cesaro_of_norms = false;    // (i)
  bool norm_limit = false;         // (ii)
  bool phi_ergodic = false;        // (iii), by the finite-dimensional collapse
  bool state_limit = false;        // (iv)
  EstimatorResult cesaro_estimator;
  EstimatorResult norm_estimator;
  EstimatorResult state_estimator;
  bool implications_hold = true;
  std::string violation;
};

struct PeripheralObstruction {
  bool clean = true;
  Complex alpha;
  std::optional<Functional> h;
  /// ||h o T - alpha h||_1 for the reported witness.
  double residual = 0.0;
  std::vector<Complex> eigenvalues;
};

ErgodicResult check_ergodic(const DynamicalSystem& sys, const MixingConfig& cfg = {});
StrictErgodicResult check_strictly_ergodic(const DynamicalSystem& sys, const MixingConfig& cfg = {});
WeakMixingResult check_weakly_mixing(const DynamicalSystem& sys, const MixingConfig& cfg = {});
StrictWeakMixingResult check_strictly_weak_mixing(const DynamicalSystem& sys, const MixingConfig& cfg = {});
ExactResult check_exact(const DynamicalSystem& sys, const MixingConfig& cfg = {});
PhiErgodicResult check_phi_ergodic_equiv(const DynamicalSystem& sys, const MixingConfig& cfg = {});
PeripheralObstruction check_peripheral_obstruction(const DynamicalSystem& sys, const MixingConfig& cfg = {});

struct MixingReport {
  Verdict ergodic;
  Verdict weakly_mixing;
  Verdict strictly_ergodic;
  Verdict strictly_weak_mixing;
  Verdict exact;
  Verdict phi_ergodic_equiv;

  ErgodicResult ergodic_detail;
  WeakMixingResult weak_detail;
  StrictErgodicResult strict_ergodic_detail;
  StrictWeakMixingResult strict_weak_detail;
  ExactResult exact_detail;
  PhiErgodicResult phi_detail;
  PeripheralObstruction obstruction;
  SpectralSummary spectrum;

  /// Spectral and estimator routes that did not agree.
  std::vector<std::string> disagreements;
  /// Broken hierarchy implications.
  std::vector<std::string> violations;
  MixingConfig config;

  bool consistent() const noexcept { return disagreements.empty() && violations.empty(); }
};

/// Runs every check, sharing one analysis.  Disagreements and violations are
/// recorded in the report, never thrown.
MixingReport classify(const DynamicalSystem& sys, const MixingConfig& cfg = {});

}  // namespace cstar

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

#include <vector>

namespace cstar {

/// Finite real sequence a_1..a_N.  Indices in this module are 1-based, as in
/// the density statements they implement.
class BoundedSequence {
 public:
  /// Throws InvalidArgument when empty or when a value is not finite.
  explicit BoundedSequence(std::vector<double> values);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  double bound() const noexcept { return bound_; }
  /// a_k for 1 <= k <= size().
  double at(int k) const { return values_.at(k - 1); }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
  double bound_ = 0.0;
};

/// (1/n) sum_{k<=n} |a_k|
double cesaro_abs(const BoundedSequence& seq, int n);
/// (1/n) sum_{k<=n} |a_k|^2
double cesaro_sq(const BoundedSequence& seq, int n);

/// "Tends to zero" at a finite horizon: the value at n is at most `tol`, or it
/// is at most 0.75 times the value at n/2.
bool dyadic_decrease(double at_n, double at_half, double tol);

struct DensityZeroSet {
  /// Members of J in increasing order (1-based).
  std::vector<int> indices;
  /// Staircase checkpoints N_1 <= N_2 <= ...; a level that could not be
  /// thinned within the horizon has checkpoint size() + 1.
  std::vector<int> checkpoints;
  std::vector<double> levels;
  /// False when some level never got below its density budget.
  bool thinned = true;
  /// density[n-1] = |J cap [1,n]| / n.
  std::vector<double> density;
};

/// Staircase union of the threshold sets J_m = {n : |a_n| > 2^-m} over the
/// levels 2^-m >= floor.
DensityZeroSet extract_density_zero(const BoundedSequence& seq, double floor = 1e-3);

struct KvnRecord {
  int n = 0;
  double tol = 0.0;
  double cesaro_abs = 0.0;
  double cesaro_sq = 0.0;
  /// sup |a_k| over k in (n/2, n] outside J.
  double off_j_sup = 0.0;
  double j_density = 0.0;
  bool abs_tends_to_zero = false;
  bool off_j_tends_to_zero = false;
  bool sq_tends_to_zero = false;
  bool agree = false;
  /// Values at the dyadic checkpoints 1, 2, 4, ..., n.
  std::vector<int> checkpoints;
  std::vector<double> abs_trace;
  std::vector<double> sq_trace;
  std::vector<double> off_j_trace;
};

/// Evaluates the three density-zero conditions at horizon n.  The squared mean
/// is judged against tol^2 and the exceptional set is built with floor tol.
KvnRecord kvn_record(const BoundedSequence& seq, int n, double tol);

/// kvn_record, throwing EquivalenceViolation when the three verdicts differ.
KvnRecord check_kvn_equivalence(const BoundedSequence& seq, int n, double tol);

}  // namespace cstar

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

#include "cstar/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cstar/error.hpp"

namespace cstar {

namespace {

void require_horizon(const BoundedSequence& seq, int n) {
  if (n < 1 || n > seq.size()) {
    std::ostringstream os;
    os << "horizon " << n << " outside [1, " << seq.size() << "]";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
}

// Compensated sum in extended precision.
template <typename F>
double mean_of(const BoundedSequence& seq, int n, F f) {
  long double sum = 0.0L, comp = 0.0L;
  for (int k = 1; k <= n; ++k) {
    const long double y = static_cast<long double>(f(seq.at(k))) - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(sum / n);
}

double window_sup_off(const BoundedSequence& seq, const std::vector<char>& in_j, int n) {
  double s = 0.0;
  for (int k = n / 2 + 1; k <= n; ++k)
    if (!in_j[k]) s = std::max(s, std::abs(seq.at(k)));
  return s;
}

}  // namespace

BoundedSequence::BoundedSequence(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(ErrorKind::InvalidArgument, "sequence is empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "sequence has a non-finite value");
    bound_ = std::max(bound_, std::abs(v));
  }
}

double cesaro_abs(const BoundedSequence& seq, int n) {
  require_horizon(seq, n);
  return mean_of(seq, n, [](double a) { return std::abs(a); });
}

double cesaro_sq(const BoundedSequence& seq, int n) {
  require_horizon(seq, n);
  return mean_of(seq, n, [](double a) { return a * a; });
}

bool dyadic_decrease(double at_n, double at_half, double tol) { return at_n <= tol || at_n <= 0.75 * at_half; }

DensityZeroSet extract_density_zero(const BoundedSequence& seq, double floor) {
  if (!(floor > 0.0)) throw Error(ErrorKind::InvalidArgument, "level floor must be positive");
  const int n = seq.size();
  DensityZeroSet out;
  for (int m = 1; m <= 60 && std::ldexp(1.0, -m) >= floor; ++m) out.levels.push_back(std::ldexp(1.0, -m));
  const int levels = static_cast<int>(out.levels.size());

  // N_m: first index from which the running density of J_m stays below 2^-m
  // through the horizon, and no earlier than N_{m-1}.
  int previous = 1;
  std::vector<int> count(n + 1);
  for (int m = 0; m < levels; ++m) {
    const double eps = out.levels[m];
    if (previous > n) {
      out.checkpoints.push_back(n + 1);
      continue;
    }
    count[0] = 0;
    for (int k = 1; k <= n; ++k) count[k] = count[k - 1] + (std::abs(seq.at(k)) > eps ? 1 : 0);
    int last_bad = 0;
    for (int k = n; k >= 1; --k) {
      if (static_cast<double>(count[k]) / k >= eps) {
        last_bad = k;
        break;
      }
    }
    const int start = last_bad == n ? n + 1 : std::max(previous, last_bad + 1);
    if (start > n) out.thinned = false;
    out.checkpoints.push_back(start);
    previous = start;
  }

  // Segment [N_m, N_{m+1}) takes J_{m+1}; before N_1 it is J_1 and after the
  // last checkpoint it is the finest level.
  std::vector<char> in_j(n + 1, 0);
  int seg_start = 1;
  for (int m = 0; m <= levels; ++m) {
    const int seg_end = m < levels ? out.checkpoints[m] : n + 1;
    const double eps = levels == 0 ? 1.0 : out.levels[std::min(m, levels - 1)];
    for (int k = seg_start; k < seg_end && k <= n; ++k)
      if (std::abs(seq.at(k)) > eps) in_j[k] = 1;
    seg_start = std::max(seg_start, seg_end);
  }
  out.density.resize(n);
  int c = 0;
  for (int k = 1; k <= n; ++k) {
    if (in_j[k]) {
      out.indices.push_back(k);
      ++c;
    }
    out.density[k - 1] = static_cast<double>(c) / k;
  }
  return out;
}

KvnRecord kvn_record(const BoundedSequence& seq, int n, double tol) {
  require_horizon(seq, n);
  std::vector<double> head(seq.values().begin(), seq.values().begin() + n);
  const BoundedSequence prefix(std::move(head));
  const DensityZeroSet j = extract_density_zero(prefix, tol);
  std::vector<char> in_j(n + 1, 0);
  for (int k : j.indices) in_j[k] = 1;

  KvnRecord r;
  r.n = n;
  r.tol = tol;
  for (int c = 1;; c *= 2) {
    const int cp = std::min(c, n);
    r.checkpoints.push_back(cp);
    r.abs_trace.push_back(cesaro_abs(prefix, cp));
    r.sq_trace.push_back(cesaro_sq(prefix, cp));
    r.off_j_trace.push_back(window_sup_off(prefix, in_j, cp));
    if (cp == n) break;
  }
  const int half = std::max(1, n / 2);
  const double abs_half = cesaro_abs(prefix, half);
  const double sq_half = cesaro_sq(prefix, half);
  const double off_half = window_sup_off(prefix, in_j, half);
  r.cesaro_abs = r.abs_trace.back();
  r.cesaro_sq = r.sq_trace.back();
  r.off_j_sup = r.off_j_trace.back();
  r.j_density = j.density[n - 1];

  r.abs_tends_to_zero = dyadic_decrease(r.cesaro_abs, abs_half, tol);
  r.sq_tends_to_zero = dyadic_decrease(r.cesaro_sq, sq_half, tol * tol);
  r.off_j_tends_to_zero =
      dyadic_decrease(r.off_j_sup, off_half, tol) && dyadic_decrease(r.j_density, j.density[half - 1], tol);
  r.agree = r.abs_tends_to_zero == r.sq_tends_to_zero && r.abs_tends_to_zero == r.off_j_tends_to_zero;
  return r;
}

KvnRecord check_kvn_equivalence(const BoundedSequence& seq, int n, double tol) {
  KvnRecord r = kvn_record(seq, n, tol);
  if (!r.agree) {
    std::ostringstream os;
    os << "density-zero conditions disagree at n=" << n << ": mean|a|=" << r.cesaro_abs
       << " (" << r.abs_tends_to_zero << "), off-J sup=" << r.off_j_sup << " with J density " << r.j_density << " ("
       << r.off_j_tends_to_zero << "), mean|a|^2=" << r.cesaro_sq << " (" << r.sq_tends_to_zero << ")";
    throw Error(ErrorKind::EquivalenceViolation, os.str());
  }
  return r;
}

}  // namespace cstar

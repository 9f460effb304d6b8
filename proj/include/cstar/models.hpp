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

#include "cstar/mixing.hpp"

namespace cstar {

/// Row (1/2, 1/4, ..., 2^-(d-1), 2^-(d-1)): the geometric weights truncated at
/// d with the tail folded into the last entry.
RVector rank_one_row(int d);

/// Commutative system on C^d whose stochastic matrix has every row equal to
/// rank_one_row(d), with that row as the state.  T is rank one.
DynamicalSystem rank_one_system(int d);

/// (Tf)_j = f_{j+k mod d}.
MarkovOperator cyclic_shift(int d, int k);

struct RotationModel {
  DynamicalSystem system;
  /// h(f) = (1/d) sum_j omega^j f_j with omega = exp(2 pi i / d).
  Functional witness;
  /// omega^-k, the eigenvalue with h o T = omega^-k h.
  Complex eigenvalue;
  /// max over the standard basis of |h(T f) - omega^-k h(f)|.
  double witness_residual = 0.0;
};

/// Rotation by k steps on the d-th roots of unity with the uniform state.
/// Throws NotCoprime unless gcd(k, d) = 1.
RotationModel rotation_system(int d, int k);

struct MarkovChainChannels {
  /// x -> diag(p11 a + p12 d, p21 a + p22 d)
  MarkovOperator k1;
  /// x -> (q1 a + q2 d) 1
  MarkovOperator k2;
  /// diag(pi) with pi P = pi.
  State rho1;
  /// diag(q1, q2).
  State rho2;
};

/// Transfer operators on M_2 built from a strictly positive 2x2 stochastic
/// matrix and a probability vector q.  Throws InvalidStochastic.
MarkovChainChannels markov_chain_channels(const RMatrix& p, const RVector& q);

inline constexpr int kMaxChainLength = 6;

/// The finite-volume state a_1 (x) ... (x) a_L -> rho0(a_1 K(a_2 K(... K(a_L)))),
/// as a functional on the single block M_{2^L} (first site most significant).
/// Throws NotInvariant when tr(rho0 K(.)) != tr(rho0 .).
Functional markov_state(const MarkovOperator& k, const State& rho0, int length);

/// Largest trace-norm distance between the length-L state reduced to its
/// first (or last) L-1 sites and the length L-1 state.
double compatibility_residual(const MarkovOperator& k, const State& rho0, int length);

/// Partial trace of a density on (C^2)^{(x) L} over the first or last site.
CMatrix reduce_first_site(const CMatrix& density);
CMatrix reduce_last_site(const CMatrix& density);

struct DistinctStates {
  int length = 0;
  double distance = 0.0;
  bool both_states = false;
  Functional phi1;
  Functional phi2;
};

/// Builds the two Markov states of markov_chain_channels(p, q) at the given
/// length and measures their trace-norm distance.
DistinctStates distinct_markov_states(const RMatrix& p, const RVector& q, int length);

}  // namespace cstar

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

#include "cstar/channel.hpp"

namespace cstar {

struct SpectralConfig {
  double cluster_radius = 1e-7;
  double peripheral_tol = 1e-9;
  double rank_tol = 1e-9;
  /// Largest acceptable condition number of the left/right eigenspace pairing.
  double max_condition = 1e10;
};

struct EigenCluster {
  Complex value;
  int algebraic = 0;
  int geometric = 0;
};

struct SpectralSummary {
  /// All D eigenvalues, sorted by decreasing modulus then argument.
  std::vector<Complex> eigenvalues;
  std::vector<EigenCluster> clusters;
  std::vector<EigenCluster> peripheral;
  int fixed_space_dim = 0;
  bool defective_peripheral = false;
  double spectral_radius = 0.0;
  /// Projection onto the fixed space; empty when defective_peripheral.
  CMatrix cesaro_matrix;
};

SpectralSummary spectrum(const MarkovOperator& t, const SpectralConfig& cfg = {});

/// Number of singular values above tol.
int numerical_rank(const CMatrix& m, double tol);

/// Spectral projection at `lambda` along the complementary invariant
/// subspace: R (L^T R)^{-1} L^T with R, L the right and left null spaces of
/// M - lambda.  Throws DefectivePeripheral when the pairing is singular.
CMatrix eigenprojector(const CMatrix& m, Complex lambda, const SpectralConfig& cfg = {});

CMatrix cesaro_projector_spectral(const MarkovOperator& t, const SpectralConfig& cfg = {});

struct IterativeCesaro {
  /// Running mean (1/N) sum_{k<N} T^k.
  CMatrix matrix;
  /// 2 M_N - M_{N/2}; removes the leading 1/N term of the tail.
  CMatrix extrapolated;
  bool converged = false;
  /// Spectral norm of M_N - M_{N/2}.
  double residual = 0.0;
  int steps = 0;
};

IterativeCesaro cesaro_projector_iterative(const MarkovOperator& t, int n, double tol);

struct PowerLimit {
  bool converges = false;
  CMatrix limit;
  /// Peripheral eigenvalues other than 1 that keep T^n from settling.
  std::vector<Complex> offending;
};

PowerLimit power_limit(const MarkovOperator& t, const SpectralConfig& cfg = {});
PowerLimit power_limit(const SpectralSummary& s, const MarkovOperator& t, const SpectralConfig& cfg = {});

/// Orthonormal basis of the column space of T - id (D x rank).
CMatrix range_of_defect(const MarkovOperator& t, double rank_tol = 1e-9);

}  // namespace cstar

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

#include "cstar/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cstar/error.hpp"

namespace cstar {

namespace {

using Svd = Eigen::BDCSVD<CMatrix>;

int count_above(const RVector& sv, double tol) {
  int r = 0;
  while (r < sv.size() && sv(r) > tol) ++r;
  return r;
}

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

}  // namespace

int numerical_rank(const CMatrix& m, double tol) {
  if (m.size() == 0) return 0;
  Svd svd(m);
  return count_above(svd.singularValues(), tol);
}

CMatrix eigenprojector(const CMatrix& m, Complex lambda, const SpectralConfig& cfg) {
  const int d = static_cast<int>(m.rows());
  const CMatrix a = m - lambda * CMatrix::Identity(d, d);
  Svd svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int k = d - count_above(svd.singularValues(), cfg.rank_tol);
  if (k == 0) return CMatrix::Zero(d, d);

  // Right null space V_s; left null space (row vectors) U_s^*.
  const CMatrix right = svd.matrixV().rightCols(k);
  const CMatrix left_adj = svd.matrixU().rightCols(k).adjoint();
  const CMatrix gram = left_adj * right;
  const RVector gsv = Eigen::JacobiSVD<CMatrix>(gram).singularValues();
  const double smallest = gsv(gsv.size() - 1);
  const double cond = smallest > 0 ? gsv(0) / smallest : INFINITY;
  if (!(cond <= cfg.max_condition)) {
    std::ostringstream os;
    os << "eigenvalue " << lambda << " has a Jordan block (pairing condition " << cond << ")";
    throw Error(ErrorKind::DefectivePeripheral, os.str());
  }
  return right * gram.partialPivLu().solve(left_adj);
}

SpectralSummary spectrum(const MarkovOperator& t, const SpectralConfig& cfg) {
  const CMatrix& m = t.matrix();
  const int d = static_cast<int>(m.rows());
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::EigensolverFailure, "eigenvalue iteration did not converge");

  SpectralSummary out;
  out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + d);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), [](Complex a, Complex b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (std::abs(ma - mb) > 1e-12) return ma > mb;
    return std::arg(a) < std::arg(b);
  });
  for (Complex z : out.eigenvalues) out.spectral_radius = std::max(out.spectral_radius, std::abs(z));

  // Single-linkage clustering.
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(out.eigenvalues[i] - out.eigenvalues[j]) <= cfg.cluster_radius)
        parent[find_root(parent, j)] = find_root(parent, i);
  std::vector<int> slot(d, -1);
  for (int i = 0; i < d; ++i) {
    const int r = find_root(parent, i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.clusters.size());
      out.clusters.push_back({});
    }
    EigenCluster& c = out.clusters[slot[r]];
    c.value += out.eigenvalues[i];
    c.algebraic += 1;
  }
  for (auto& c : out.clusters) c.value /= static_cast<double>(c.algebraic);

  // Geometric multiplicities are only needed (and only computed) on the
  // peripheral band; a simple eigenvalue is never defective.
  for (auto& c : out.clusters) {
    if (std::abs(c.value) < 1.0 - cfg.peripheral_tol) continue;
    if (std::abs(c.value - 1.0) <= cfg.cluster_radius) c.value = 1.0;
    c.geometric = c.algebraic == 1 ? 1 : d - numerical_rank(m - c.value * CMatrix::Identity(d, d), cfg.rank_tol);
    if (c.geometric < c.algebraic) out.defective_peripheral = true;
    out.peripheral.push_back(c);
  }

  out.fixed_space_dim = d - numerical_rank(m - CMatrix::Identity(d, d), cfg.rank_tol);
  if (!out.defective_peripheral) {
    try {
      out.cesaro_matrix = eigenprojector(m, 1.0, cfg);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DefectivePeripheral) throw;
      out.defective_peripheral = true;
    }
  }
  return out;
}

CMatrix cesaro_projector_spectral(const MarkovOperator& t, const SpectralConfig& cfg) {
  const SpectralSummary s = spectrum(t, cfg);
  if (s.defective_peripheral)
    throw Error(ErrorKind::DefectivePeripheral, "peripheral spectrum is not semisimple; the map is not power bounded");
  return s.cesaro_matrix;
}

IterativeCesaro cesaro_projector_iterative(const MarkovOperator& t, int n, double tol) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "iteration count must be at least 1");
  const CMatrix& m = t.matrix();
  const int d = static_cast<int>(m.rows());
  const int half = std::max(1, n / 2);
  CMatrix power = CMatrix::Identity(d, d);
  CMatrix sum = CMatrix::Zero(d, d);
  CMatrix half_mean;
  for (int k = 0; k < n; ++k) {
    sum += power;
    if (k + 1 == half) half_mean = sum / static_cast<double>(half);
    if (k + 1 < n) power = m * power;
  }
  IterativeCesaro out;
  out.steps = n;
  out.matrix = sum / static_cast<double>(n);
  out.extrapolated = 2.0 * out.matrix - half_mean;
  out.residual = spectral_norm(out.matrix - half_mean);
  out.converged = out.residual <= tol;
  return out;
}

PowerLimit power_limit(const SpectralSummary& s, const MarkovOperator&, const SpectralConfig& cfg) {
  if (s.defective_peripheral)
    throw Error(ErrorKind::DefectivePeripheral, "peripheral spectrum is not semisimple; the map is not power bounded");
  PowerLimit out;
  for (const auto& c : s.peripheral)
    if (std::abs(c.value - 1.0) > cfg.cluster_radius) out.offending.push_back(c.value);
  out.converges = out.offending.empty();
  if (out.converges) out.limit = s.cesaro_matrix;
  return out;
}

PowerLimit power_limit(const MarkovOperator& t, const SpectralConfig& cfg) {
  return power_limit(spectrum(t, cfg), t, cfg);
}

CMatrix range_of_defect(const MarkovOperator& t, double rank_tol) {
  const int d = t.dimension();
  Svd svd(t.matrix() - CMatrix::Identity(d, d), Eigen::ComputeFullU);
  const int r = count_above(svd.singularValues(), rank_tol);
  return svd.matrixU().leftCols(r);
}

}  // namespace cstar

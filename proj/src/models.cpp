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

#include "cstar/models.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "cstar/error.hpp"

namespace cstar {

RVector rank_one_row(int d) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 2");
  RVector row(d);
  for (int j = 0; j < d - 1; ++j) row(j) = std::ldexp(1.0, -(j + 1));
  row(d - 1) = std::ldexp(1.0, -(d - 1));
  return row;
}

DynamicalSystem rank_one_system(int d) {
  const RVector row = rank_one_row(d);
  RMatrix p(d, d);
  for (int i = 0; i < d; ++i) p.row(i) = row.transpose();
  MarkovOperator t = MarkovOperator::from_stochastic(p);
  std::vector<CMatrix> dens;
  for (int j = 0; j < d; ++j) dens.push_back(CMatrix::Constant(1, 1, row(j)));
  return DynamicalSystem(std::move(t), State(Functional(AlgebraShape::commutative(d), std::move(dens))));
}

MarkovOperator cyclic_shift(int d, int k) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  RMatrix p = RMatrix::Zero(d, d);
  const int step = ((k % d) + d) % d;
  for (int j = 0; j < d; ++j) p(j, (j + step) % d) = 1.0;
  return MarkovOperator::from_stochastic(p);
}

RotationModel rotation_system(int d, int k) {
  if (d < 2) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 2");
  const int step = ((k % d) + d) % d;
  if (std::gcd(step, d) != 1) {
    std::ostringstream os;
    os << "step " << k << " and dimension " << d << " share a factor";
    throw Error(ErrorKind::NotCoprime, os.str());
  }
  const AlgebraShape shape = AlgebraShape::commutative(d);
  MarkovOperator t = cyclic_shift(d, k);

  std::vector<CMatrix> uniform, chi;
  for (int j = 0; j < d; ++j) {
    uniform.push_back(CMatrix::Constant(1, 1, 1.0 / d));
    chi.push_back(CMatrix::Constant(1, 1, std::polar(1.0 / d, 2.0 * M_PI * j / d)));
  }
  Functional h(shape, std::move(chi));
  const Complex lambda = std::polar(1.0, -2.0 * M_PI * step / d);
  double residual = 0.0;
  for (int m = 0; m < d; ++m) {
    CVector e = CVector::Zero(d);
    e(m) = 1.0;
    const Element f = Element::from_vector(shape, e);
    residual = std::max(residual, std::abs(h(t(f)) - lambda * h(f)));
  }
  DynamicalSystem sys(std::move(t), State(Functional(shape, std::move(uniform))));
  return RotationModel{std::move(sys), std::move(h), lambda, residual};
}

MarkovChainChannels markov_chain_channels(const RMatrix& p, const RVector& q) {
  if (p.rows() != 2 || p.cols() != 2) throw Error(ErrorKind::InvalidStochastic, "transition matrix must be 2x2");
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (!(p(i, j) > 0.0)) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") = " << p(i, j) << " is not strictly positive";
        throw Error(ErrorKind::InvalidStochastic, os.str());
      }
    }
    if (!(std::abs(p.row(i).sum() - 1.0) <= 1e-12)) {
      std::ostringstream os;
      os << "row " << i << " sums to " << p.row(i).sum();
      throw Error(ErrorKind::InvalidStochastic, os.str());
    }
  }
  if (q.size() != 2 || !(q(0) > 0.0) || !(q(1) > 0.0) || !(std::abs(q.sum() - 1.0) <= 1e-12))
    throw Error(ErrorKind::InvalidStochastic, "q must be a strictly positive probability vector of length 2");

  const AlgebraShape m2({2});
  auto unit = [](int i, int j) {
    CMatrix e = CMatrix::Zero(2, 2);
    e(i, j) = 1.0;
    return e;
  };
  std::vector<CMatrix> a1, a2;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      a1.push_back(std::sqrt(p(i, j)) * unit(i, j));
      a2.push_back(std::sqrt(q(j)) * unit(i, j));
    }
  }
  const double z = p(0, 1) + p(1, 0);
  CMatrix r1 = CMatrix::Zero(2, 2), r2 = CMatrix::Zero(2, 2);
  r1(0, 0) = p(1, 0) / z;
  r1(1, 1) = p(0, 1) / z;
  r2(0, 0) = q(0);
  r2(1, 1) = q(1);

  MarkovChainChannels out{MarkovOperator::from_kraus(m2, std::move(a1)), MarkovOperator::from_kraus(m2, std::move(a2)),
                          State(Functional(m2, {r1})), State(Functional(m2, {r2}))};
  // Each state must be invariant for its own channel.
  const std::pair<const MarkovOperator*, const State*> pairs[] = {{&out.k1, &out.rho1}, {&out.k2, &out.rho2}};
  for (const auto& [k, rho] : pairs) {
    const CVector f = rho->dual_vector();
    const double drift = functional_norm(Functional::from_dual_vector(m2, k->apply_dual(f) - f));
    if (drift > 1e-10) throw Error(ErrorKind::InvalidStochastic, "stationary state is not invariant");
  }
  return out;
}

Functional markov_state(const MarkovOperator& k, const State& rho0, int length) {
  if (length < 1 || length > kMaxChainLength) {
    std::ostringstream os;
    os << "chain length " << length << " outside [1, " << kMaxChainLength << "]";
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  const AlgebraShape m2({2});
  if (!(k.shape() == m2) || !(rho0.shape() == m2))
    throw Error(ErrorKind::ShapeMismatch, "Markov states are built over M_2");
  const CVector f = rho0.dual_vector();
  const double drift = functional_norm(Functional::from_dual_vector(m2, k.apply_dual(f) - f));
  if (drift > 1e-10) {
    std::ostringstream os;
    os << "initial state is not invariant under the transfer operator (drift " << drift << ")";
    throw Error(ErrorKind::NotInvariant, os.str());
  }

  // Evaluate on every product of matrix units; tr(sigma E_RC) = sigma(C, R).
  const int dim = 1 << length;
  CMatrix sigma(dim, dim);
  const CMatrix& kmat = k.matrix();
  for (int row = 0; row < dim; ++row) {
    for (int col = 0; col < dim; ++col) {
      CMatrix y = CMatrix::Identity(2, 2);
      for (int site = length - 1; site >= 0; --site) {
        const int shift = length - 1 - site;
        const int r = (row >> shift) & 1, c = (col >> shift) & 1;
        CMatrix a = CMatrix::Zero(2, 2);
        a(r, c) = 1.0;
        if (site == length - 1) {
          y = a;
        } else {
          const CVector ky = kmat * Eigen::Map<const CVector>(y.data(), 4);
          y = a * Eigen::Map<const CMatrix>(ky.data(), 2, 2);
        }
      }
      sigma(col, row) = rho0(Element(m2, {y}));
    }
  }
  Functional out(AlgebraShape({dim}), {sigma});
  State check(out, 1e-10);
  (void)check;
  return out;
}

CMatrix reduce_last_site(const CMatrix& density) {
  const int half = static_cast<int>(density.rows()) / 2;
  CMatrix out = CMatrix::Zero(half, half);
  for (int i = 0; i < half; ++i)
    for (int j = 0; j < half; ++j) out(i, j) = density(2 * i, 2 * j) + density(2 * i + 1, 2 * j + 1);
  return out;
}

CMatrix reduce_first_site(const CMatrix& density) {
  const int half = static_cast<int>(density.rows()) / 2;
  return density.topLeftCorner(half, half) + density.bottomRightCorner(half, half);
}

double compatibility_residual(const MarkovOperator& k, const State& rho0, int length) {
  if (length < 2) throw Error(ErrorKind::InvalidArgument, "compatibility needs at least two sites");
  const CMatrix big = markov_state(k, rho0, length).density(0);
  const CMatrix small = markov_state(k, rho0, length - 1).density(0);
  return std::max(trace_norm(reduce_last_site(big) - small), trace_norm(reduce_first_site(big) - small));
}

DistinctStates distinct_markov_states(const RMatrix& p, const RVector& q, int length) {
  const MarkovChainChannels ch = markov_chain_channels(p, q);
  Functional phi1 = markov_state(ch.k1, ch.rho1, length);
  Functional phi2 = markov_state(ch.k2, ch.rho2, length);
  const double dist = functional_norm(phi1 - phi2);
  const bool both = phi1.is_state(1e-10) && phi2.is_state(1e-10);
  return DistinctStates{length, dist, both, std::move(phi1), std::move(phi2)};
}

}  // namespace cstar

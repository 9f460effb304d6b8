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

#include <doctest.h>

#include <algorithm>

#include "cstar/error.hpp"
#include "cstar/models.hpp"
#include "cstar/random.hpp"
#include "cstar/spectral.hpp"
#include "oracles.hpp"

using namespace cstar;

namespace {

RMatrix chain_p() {
  RMatrix p(2, 2);
  p << 0.7, 0.3, 0.4, 0.6;
  return p;
}

RMatrix rank_one_p() {
  RMatrix p(4, 4);
  for (int i = 0; i < 4; ++i) p.row(i) << 0.5, 0.25, 0.125, 0.125;
  return p;
}

bool contains(const std::vector<Complex>& zs, Complex z, double tol) {
  return std::any_of(zs.begin(), zs.end(), [&](Complex w) { return std::abs(w - z) < tol; });
}

}  // namespace

TEST_CASE("spectrum") {
  const SpectralSummary id = spectrum(MarkovOperator::identity(AlgebraShape({2})));
  CHECK(id.fixed_space_dim == 4);
  for (Complex z : id.eigenvalues) CHECK(std::abs(z - 1.0) < 1e-12);
  CHECK_FALSE(id.defective_peripheral);

  const SpectralSummary shift = spectrum(cyclic_shift(4, 1));
  REQUIRE(shift.eigenvalues.size() == 4);
  const Complex i(0, 1);
  for (Complex z : {Complex(1), i, Complex(-1), -i}) CHECK(contains(shift.eigenvalues, z, 1e-12));
  CHECK(shift.peripheral.size() == 4);
  CHECK(shift.fixed_space_dim == 1);

  // Oracle: trace 1.3 and determinant 0.3 of P give the roots 1 and 0.3.
  const SpectralSummary chain = spectrum(MarkovOperator::from_stochastic(chain_p()));
  CHECK(contains(chain.eigenvalues, 1.0, 1e-12));
  CHECK(contains(chain.eigenvalues, 0.3, 1e-12));
  CHECK(chain.peripheral.size() == 1);

  for (int seed = 0; seed < 10; ++seed) {
    const SpectralSummary s = spectrum(random_unital_cp(AlgebraShape({1, 2}), 2, seed));
    CHECK(s.spectral_radius <= 1 + 1e-8);
    CHECK(contains(s.eigenvalues, 1.0, 1e-8));
  }
}

TEST_CASE("spectral Cesaro projector") {
  const CMatrix id = cesaro_projector_spectral(MarkovOperator::identity(AlgebraShape({2})));
  CHECK((id - CMatrix::Identity(4, 4)).norm() < 1e-12);

  const MarkovOperator p = MarkovOperator::from_stochastic(rank_one_p());
  CHECK((cesaro_projector_spectral(p) - p.matrix()).norm() < 1e-12);

  const CMatrix avg = cesaro_projector_spectral(cyclic_shift(4, 1));
  CHECK((avg - CMatrix::Constant(4, 4, 0.25)).norm() < 1e-12);

  for (int seed = 0; seed < 10; ++seed) {
    const MarkovOperator t = random_unital_cp(AlgebraShape({3}), 1 + seed % 3, seed);
    const CMatrix c = cesaro_projector_spectral(t);
    CHECK((c * c - c).norm() < 1e-8);
    CHECK((t.matrix() * c - c).norm() < 1e-9);
    CHECK((c * t.matrix() - c).norm() < 1e-9);
    const CVector one = Element::unit(t.shape()).vectorize();
    CHECK((c * one - one).norm() < 1e-9);
  }
}

TEST_CASE("iterative Cesaro projector") {
  const IterativeCesaro id = cesaro_projector_iterative(MarkovOperator::identity(AlgebraShape({2})), 10, 1e-12);
  CHECK(id.converged);
  CHECK((id.matrix - CMatrix::Identity(4, 4)).norm() < 1e-14);

  const MarkovOperator shift = cyclic_shift(4, 1);
  const IterativeCesaro it = cesaro_projector_iterative(shift, 4096, 1e-3);
  CHECK(it.converged);
  CHECK((it.matrix - cesaro_projector_spectral(shift)).cwiseAbs().maxCoeff() <= 1e-3);

  for (int seed = 0; seed < 20; ++seed) {
    const MarkovOperator t = random_unital_cp(AlgebraShape({2}), 2 + seed % 2, 500 + seed);
    const IterativeCesaro r = cesaro_projector_iterative(t, 1 << 14, 1e-6);
    CHECK((r.extrapolated - cesaro_projector_spectral(t)).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("power limit") {
  const MarkovOperator p = MarkovOperator::from_stochastic(rank_one_p());
  const PowerLimit lp = power_limit(p);
  CHECK(lp.converges);
  CHECK((lp.limit - p.matrix()).norm() < 1e-12);

  const PowerLimit ls = power_limit(cyclic_shift(4, 1));
  CHECK_FALSE(ls.converges);
  CHECK(ls.offending.size() == 3);
  const Complex i(0, 1);
  for (Complex z : {i, Complex(-1), -i}) CHECK(contains(ls.offending, z, 1e-12));

  // Oracle: 200 steps of the stochastic matrix itself.
  const PowerLimit lc = power_limit(MarkovOperator::from_stochastic(chain_p()));
  CHECK(lc.converges);
  const RMatrix ref = oracle::power(chain_p(), 200);
  CHECK((lc.limit.real() - ref).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(ref(0, 0) - 4.0 / 7.0) < 1e-12);
}

TEST_CASE("range of the defect") {
  CHECK(range_of_defect(MarkovOperator::identity(AlgebraShape({2}))).cols() == 0);
  for (int seed = 0; seed < 5; ++seed) {
    const MarkovOperator t = random_unital_cp(AlgebraShape({2}), 2, seed);
    REQUIRE(spectrum(t).fixed_space_dim == 1);
    CHECK(range_of_defect(t).cols() == 3);
  }
  // The range of T - id for the shift is the kernel of the uniform state.
  const CMatrix r = range_of_defect(cyclic_shift(4, 1));
  CHECK(r.cols() == 3);
  const CVector uniform = CVector::Constant(4, 0.25);
  CHECK((uniform.transpose() * r).norm() < 1e-12);

  for (int seed = 0; seed < 10; ++seed) {
    const MarkovOperator t = random_unital_cp(AlgebraShape({1, 2}), 1 + seed % 3, seed);
    const SpectralSummary s = spectrum(t);
    CHECK(s.fixed_space_dim == t.dimension() - range_of_defect(t).cols());
  }
}

TEST_CASE("defective peripheral input is rejected") {
  // A Jordan block at 1: not power-bounded, so not a Markov operator.
  CMatrix m(2, 2);
  m << 2, -1, 1, 0;
  const MarkovOperator bad = MarkovOperator::from_superoperator(AlgebraShape({1, 1}), m, PositivityClaim::Declared);
  const SpectralSummary s = spectrum(bad);
  CHECK(s.defective_peripheral);
  try {
    cesaro_projector_spectral(bad);
    FAIL("expected DefectivePeripheral");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DefectivePeripheral);
  }
}

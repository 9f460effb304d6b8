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

#include "cstar/channel.hpp"
#include "cstar/error.hpp"
#include "cstar/random.hpp"
#include "oracles.hpp"

using namespace cstar;

namespace {

const AlgebraShape kM2({2});

// vec(x) -> vec(x^T) on M_2.
CMatrix transpose_matrix() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 1.0;
  m(1, 2) = m(2, 1) = 1.0;
  return m;
}

// x -> 2x - (tr x / 2) 1: unital, Hermitian-preserving, not positive.
CMatrix non_positive_matrix() {
  CVector one(4);
  one << 1, 0, 0, 1;
  return 2.0 * CMatrix::Identity(4, 4) - 0.5 * one * one.transpose();
}

RMatrix rank_one_p() {
  RMatrix p(4, 4);
  for (int i = 0; i < 4; ++i) p.row(i) << 0.5, 0.25, 0.125, 0.125;
  return p;
}

RMatrix chain_p() {
  RMatrix p(2, 2);
  p << 0.7, 0.3, 0.4, 0.6;
  return p;
}

Functional diagonal_functional(const RVector& v) {
  std::vector<CMatrix> dens;
  for (Eigen::Index i = 0; i < v.size(); ++i) dens.push_back(CMatrix::Constant(1, 1, v(i)));
  return Functional(AlgebraShape::commutative(static_cast<int>(v.size())), std::move(dens));
}

double max_diff(const Element& a, const Element& b) { return operator_norm(a - b); }

}  // namespace

TEST_CASE("from_superoperator") {
  const MarkovOperator id = MarkovOperator::from_superoperator(kM2, CMatrix::Identity(4, 4), PositivityClaim::VerifiedCP);
  CHECK((id.matrix() - MarkovOperator::identity(kM2).matrix()).norm() == 0.0);

  const MarkovOperator tr = MarkovOperator::from_superoperator(kM2, transpose_matrix(), PositivityClaim::Declared);
  CHECK(tr.claim() == PositivityClaim::Declared);
  CHECK(check_positive_sampled(tr, 500).passed);

  // T(1) = 1 + 1e-3 E_00.
  CMatrix bad = CMatrix::Identity(4, 4);
  bad(0, 0) += 1e-3;
  try {
    MarkovOperator::from_superoperator(kM2, bad, PositivityClaim::Declared);
    FAIL("expected NotUnital");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotUnital);
  }

  CMatrix skew = CMatrix::Identity(4, 4);
  skew(1, 1) = Complex(0, 1);  // x_10 -> i x_10 breaks Hermiticity
  try {
    MarkovOperator::from_superoperator(kM2, skew, PositivityClaim::Declared);
    FAIL("expected NotHermitianPreserving");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitianPreserving);
  }

  CHECK_THROWS_AS(MarkovOperator::from_superoperator(kM2, transpose_matrix(), PositivityClaim::VerifiedCP), Error);
  CHECK_THROWS_AS(MarkovOperator::from_superoperator(kM2, CMatrix::Identity(3, 3), PositivityClaim::Declared), Error);
}

TEST_CASE("from_kraus") {
  const MarkovOperator id = MarkovOperator::from_kraus(kM2, {CMatrix::Identity(2, 2)});
  CHECK((id.matrix() - CMatrix::Identity(4, 4)).norm() < 1e-15);
  CHECK(id.is_cp());

  CMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const std::vector<CMatrix> kraus{std::sqrt(0.5) * CMatrix::Identity(2, 2), std::sqrt(0.5) * x};
  const MarkovOperator t = MarkovOperator::from_kraus(kM2, kraus);
  CHECK(operator_norm(t(Element::unit(kM2)) - Element::unit(kM2)) < 1e-15);
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    const Element e = random_element(kM2, rng);
    CMatrix ref = CMatrix::Zero(2, 2);
    for (const auto& a : kraus) ref += a * e.block(0) * a.adjoint();
    CHECK((t(e).block(0) - ref).norm() < 1e-12);
  }

  // Direct sum: Kraus maps on the embedding are compressed back to the blocks.
  const AlgebraShape s({1, 2});
  Rng r2(2);
  const MarkovOperator u = random_unital_cp(s, 2, 9);
  for (int i = 0; i < 5; ++i) {
    const Element e = random_element(s, r2);
    CMatrix full = CMatrix::Zero(3, 3);
    for (const auto& a : u.kraus()) full += a * e.embed() * a.adjoint();
    CHECK(max_diff(u(e), Element::compress(s, full)) < 1e-12);
  }

  CMatrix a = CMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = std::sqrt(0.9);
  try {
    MarkovOperator::from_kraus(kM2, {a});
    FAIL("expected NotUnital");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotUnital);
  }
}

TEST_CASE("from_stochastic") {
  const MarkovOperator id = MarkovOperator::from_stochastic(RMatrix::Identity(3, 3));
  CHECK((id.matrix() - CMatrix::Identity(3, 3)).norm() == 0.0);

  const RMatrix p = rank_one_p();
  const MarkovOperator t = MarkovOperator::from_stochastic(p);
  CHECK((power(t, 2).matrix() - t.matrix()).norm() < 1e-15);
  CHECK((p * p - p).norm() < 1e-15);

  const MarkovOperator c = MarkovOperator::from_stochastic(chain_p());
  CHECK(c.is_cp());
  CHECK(c.shape().blocks() == std::vector<int>{1, 1});

  RMatrix bad = chain_p();
  bad(1, 1) = 0.5;
  try {
    MarkovOperator::from_stochastic(bad);
    FAIL("expected NotStochastic");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotStochastic);
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
}

TEST_CASE("Choi test") {
  CHECK(check_cp(MarkovOperator::identity(kM2)).cp);

  const CMatrix oracle_choi = oracle::choi(2, [](const CMatrix& e) { return CMatrix(e.transpose()); });
  CHECK(std::abs(oracle::min_eig(oracle_choi) + 1.0) < 1e-12);
  const MarkovOperator tr = MarkovOperator::from_superoperator(kM2, transpose_matrix(), PositivityClaim::Declared);
  CHECK((choi_matrix(tr) - oracle_choi).norm() < 1e-15);
  const CpCheck c = check_cp(tr);
  CHECK_FALSE(c.cp);
  CHECK(std::abs(c.min_choi_eigenvalue + 1.0) <= 1e-9);

  for (int seed = 0; seed < 20; ++seed) {
    const MarkovOperator t = random_unital_cp(AlgebraShape({1, 2}), 1 + seed % 3, seed);
    CHECK(check_cp(t).cp);
  }
}

TEST_CASE("sampled positivity") {
  const MarkovOperator tr = MarkovOperator::from_superoperator(kM2, transpose_matrix(), PositivityClaim::Declared);
  CHECK(check_positive_sampled(tr, 500).passed);

  const MarkovOperator np = MarkovOperator::from_superoperator(kM2, non_positive_matrix(), PositivityClaim::Declared);
  const PositivityCheck r = check_positive_sampled(np, 500);
  CHECK_FALSE(r.passed);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->is_positive());
  CHECK(np(*r.witness).min_eigenvalue() < -1e-8);
  CHECK_THROWS_AS(MarkovOperator::from_superoperator(kM2, non_positive_matrix(), PositivityClaim::SampledPositive),
                  Error);

  CHECK(check_positive_sampled(random_unital_cp(kM2, 2, 4), 200).passed);
}

TEST_CASE("dual map") {
  const DualMap di = dual(MarkovOperator::identity(kM2));
  CHECK((di.matrix() - CMatrix::Identity(4, 4)).norm() == 0.0);

  Rng rng(3);
  const AlgebraShape s({1, 2});
  const MarkovOperator t = random_unital_cp(s, 2, 5);
  for (int i = 0; i < 20; ++i) {
    const Functional psi = random_functional(s, rng);
    const Element x = random_element(s, rng);
    CHECK(std::abs(dual(t)(psi)(x) - psi(t(x))) < 1e-12);
  }

  const RMatrix p = chain_p();
  RVector v(2);
  v << 0.25, 0.75;
  const Functional image = dual(MarkovOperator::from_stochastic(p))(diagonal_functional(v));
  const RVector expect = (v.transpose() * p).transpose();
  for (int j = 0; j < 2; ++j) CHECK(std::abs(image.density(j)(0, 0) - expect(j)) < 1e-15);

  // dual(T o S) = dual(S) o dual(T)
  const MarkovOperator u = random_unital_cp(s, 1, 6);
  const CMatrix lhs = dual(compose(t, u)).matrix();
  const CMatrix rhs = dual(u).matrix() * dual(t).matrix();
  CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("invariant states") {
  const auto rank_one = invariant_states(MarkovOperator::from_stochastic(rank_one_p()));
  REQUIRE(rank_one.size() == 1);
  const double row[] = {0.5, 0.25, 0.125, 0.125};
  for (int j = 0; j < 4; ++j) CHECK(std::abs(rank_one[0].functional().density(j)(0, 0) - row[j]) < 1e-12);

  const auto chain = invariant_states(MarkovOperator::from_stochastic(chain_p()));
  REQUIRE(chain.size() == 1);
  const Eigen::RowVectorXd pi = oracle::stationary(chain_p());
  CHECK(std::abs(pi(0) - 4.0 / 7.0) < 1e-12);
  CHECK(std::abs(chain[0].functional().density(0)(0, 0) - pi(0)) < 1e-12);
  CHECK(std::abs(chain[0].functional().density(1)(0, 0) - pi(1)) < 1e-12);

  CHECK(invariant_states(MarkovOperator::identity(kM2)).size() > 1);

  for (int seed = 0; seed < 10; ++seed) {
    const MarkovOperator t = random_unital_cp(AlgebraShape({1, 2}), 2, seed);
    for (const State& st : invariant_states(t)) {
      CHECK(functional_norm(dual(t)(st.functional()) - st.functional()) <= 1e-8);
    }
  }
}

TEST_CASE("tensor products of operators") {
  const MarkovOperator id = MarkovOperator::identity(kM2);
  const MarkovOperator idid = tensor(id, id);
  CHECK((idid.matrix() - CMatrix::Identity(16, 16)).norm() == 0.0);

  Rng rng(7);
  const AlgebraShape s({1, 2});
  const MarkovOperator t = random_unital_cp(s, 2, 11);
  const MarkovOperator tt = tensor(t, t);
  CHECK(tt.is_cp());
  for (int i = 0; i < 10; ++i) {
    const Element x = random_element(s, rng);
    const Element y = random_element(s, rng);
    CHECK(max_diff(tt(tensor_elements(x, y)), tensor_elements(t(x), t(y))) < 1e-12);
  }
  // Factored apply matches the dense matrix.
  const CMatrix cols = CMatrix::Random(tt.dimension(), 3);
  CHECK((tt.apply(cols) - tt.matrix() * cols).norm() < 1e-12);
  CHECK((tt.apply_dual(cols) - tt.matrix().transpose() * cols).norm() < 1e-12);

  const State phi = invariant_states(t).front();
  const Functional pp = tensor_functionals(phi.functional(), phi.functional());
  CHECK(functional_norm(dual(tt)(pp) - pp) < 1e-12);

  const MarkovOperator tr = MarkovOperator::from_superoperator(kM2, transpose_matrix(), PositivityClaim::Declared);
  try {
    tensor(tr, id);
    FAIL("expected RequiresCP");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RequiresCP);
  }
}

TEST_CASE("power and compose") {
  const MarkovOperator t = random_unital_cp(AlgebraShape({3}), 2, 12);
  CHECK((power(t, 1).matrix() - t.matrix()).norm() == 0.0);
  CHECK((power(t, 0).matrix() - CMatrix::Identity(9, 9)).norm() == 0.0);
  CHECK((power(t, 3).matrix() - t.matrix() * t.matrix() * t.matrix()).norm() < 1e-12);
  const MarkovOperator p = MarkovOperator::from_stochastic(rank_one_p());
  CHECK((power(p, 5).matrix() - p.matrix()).norm() < 1e-14);
  CHECK((compose(t, MarkovOperator::identity(t.shape())).matrix() - t.matrix()).norm() < 1e-15);
}

TEST_CASE("random unital CP channels") {
  const MarkovOperator u = random_unital_cp(AlgebraShape({3}), 1, 3);
  REQUIRE(u.kraus().size() == 1);
  const CMatrix& a = u.kraus()[0];
  CHECK((a * a.adjoint() - CMatrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((a.adjoint() * a - CMatrix::Identity(3, 3)).norm() < 1e-12);

  const AlgebraShape s({1, 1, 2});
  Rng rng(4);
  for (int seed = 0; seed < 20; ++seed) {
    const MarkovOperator t = random_unital_cp(s, 1 + seed % 3, seed);
    CHECK(check_cp(t).cp);
    CHECK(operator_norm(t(Element::unit(s)) - Element::unit(s)) < 1e-10);
    for (int i = 0; i < 50; ++i) {
      const Element x = random_element(s, rng);
      CHECK(operator_norm(t(x)) <= operator_norm(x) + 1e-8);
    }
  }
  const MarkovOperator a1 = random_unital_cp(s, 2, 77);
  const MarkovOperator a2 = random_unital_cp(s, 2, 77);
  CHECK((a1.matrix().array() == a2.matrix().array()).all());
}

TEST_CASE("absorbing corner channels") {
  const AlgebraShape s({3});
  for (int seed = 0; seed < 10; ++seed) {
    const MarkovOperator t = random_absorbing_corner(s, 1 + seed % 2, seed);
    CHECK(check_cp(t).cp);
    const auto states = invariant_states(t);
    REQUIRE(!states.empty());
    // Some invariant state vanishes on a nonzero projection.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(states.front().functional().density(0));
    CHECK(es.eigenvalues().minCoeff() < 1e-8);
  }
}

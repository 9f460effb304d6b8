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

#include <cmath>
#include <limits>

#include "cstar/error.hpp"
#include "cstar/random.hpp"
#include "cstar/sequences.hpp"

using namespace cstar;

namespace {

bool is_square(int k) {
  const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(k))));
  return r * r == k;
}

BoundedSequence squares(int n) {
  std::vector<double> v(n);
  for (int k = 1; k <= n; ++k) v[k - 1] = is_square(k) ? 1.0 : 0.0;
  return BoundedSequence(std::move(v));
}

BoundedSequence constant(int n, double c) { return BoundedSequence(std::vector<double>(n, c)); }

}  // namespace

TEST_CASE("Cesaro means") {
  const BoundedSequence zero = constant(100, 0.0);
  CHECK(cesaro_abs(zero, 100) == 0.0);
  CHECK(cesaro_sq(zero, 100) == 0.0);
  const BoundedSequence one = constant(100, 1.0);
  CHECK(cesaro_abs(one, 100) == 1.0);
  CHECK(cesaro_sq(one, 100) == 1.0);

  // 100 squares up to 10^4.
  const BoundedSequence sq = squares(10000);
  CHECK(cesaro_abs(sq, 10000) == doctest::Approx(0.01).epsilon(1e-14));

  CHECK_THROWS_AS(BoundedSequence(std::vector<double>{}), Error);
  CHECK_THROWS_AS(BoundedSequence({1.0, std::numeric_limits<double>::quiet_NaN()}), Error);
}

TEST_CASE("Cauchy-Schwarz sandwich") {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> v(1000);
    for (double& x : v) x = (rng.uniform() - 0.5) * 4.0;
    const BoundedSequence s(std::move(v));
    for (int n : {1, 7, 100, 1000}) {
      const double a = cesaro_abs(s, n), q = cesaro_sq(s, n);
      CHECK(q <= s.bound() * a);
      CHECK(a * a <= q);
    }
  }
}

TEST_CASE("density-zero extraction") {
  const DensityZeroSet z = extract_density_zero(constant(1000, 0.0));
  CHECK(z.indices.empty());

  const BoundedSequence sq = squares(10000);
  const DensityZeroSet j = extract_density_zero(sq);
  REQUIRE(j.indices.size() == 100);
  for (int k : j.indices) CHECK(is_square(k));
  CHECK(j.density[9999] == doctest::Approx(0.01));
  // Squares have running density 1/sqrt(n): level 2^-m thins only after 4^m terms.
  CHECK_FALSE(j.thinned);
  const DensityZeroSet coarse = extract_density_zero(sq, 0.02);
  CHECK(coarse.thinned);
  CHECK(coarse.checkpoints.back() <= 1025);

  const DensityZeroSet c = extract_density_zero(constant(1000, 1.0));
  CHECK_FALSE(c.thinned);
  CHECK(c.density.back() == doctest::Approx(1.0));

  // Non-increasing density profile beyond the last checkpoint when the mean vanishes.
  std::vector<double> h(1 << 14);
  for (std::size_t k = 1; k <= h.size(); ++k) h[k - 1] = 1.0 / static_cast<double>(k);
  const DensityZeroSet hj = extract_density_zero(BoundedSequence(h));
  const int start = hj.checkpoints.empty() ? 1 : hj.checkpoints.back();
  for (int n = start + 1; n <= static_cast<int>(h.size()); ++n) CHECK(hj.density[n - 1] <= hj.density[n - 2] + 1e-15);
}

TEST_CASE("density-zero equivalence") {
  const KvnRecord sq = check_kvn_equivalence(squares(1 << 14), 1 << 14, 1e-3);
  CHECK(sq.agree);
  CHECK(sq.abs_tends_to_zero);
  CHECK(sq.sq_tends_to_zero);
  CHECK(sq.off_j_tends_to_zero);

  const KvnRecord one = check_kvn_equivalence(constant(1 << 12, 1.0), 1 << 12, 1e-3);
  CHECK(one.agree);
  CHECK_FALSE(one.abs_tends_to_zero);

  std::vector<double> h(1 << 14);
  for (std::size_t k = 1; k <= h.size(); ++k) h[k - 1] = 1.0 / static_cast<double>(k);
  const KvnRecord harm = check_kvn_equivalence(BoundedSequence(h), 1 << 14, 1e-3);
  CHECK(harm.agree);
  CHECK(harm.abs_tends_to_zero);

  const KvnRecord zero = check_kvn_equivalence(constant(1 << 12, 0.0), 1 << 12, 1e-3);
  CHECK(zero.agree);
  CHECK(zero.abs_tends_to_zero);
}

TEST_CASE("dyadic decrease") {
  CHECK(dyadic_decrease(1e-7, 1.0, 1e-6));
  CHECK(dyadic_decrease(0.5, 1.0, 1e-6));
  CHECK_FALSE(dyadic_decrease(0.9, 1.0, 1e-6));
}

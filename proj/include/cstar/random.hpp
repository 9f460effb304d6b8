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
#include <random>

#include "cstar/algebra.hpp"

namespace cstar {

/// Seeded generator; every random object in the library is drawn from one of
/// these so results are reproducible from a seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// splitmix64 finalizer; used to derive independent streams from one seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

CMatrix random_ginibre(int rows, int cols, Rng& rng);

/// Complex Gaussian element scaled to operator norm 1.
Element random_element(const AlgebraShape& shape, Rng& rng);
/// Hermitian element scaled to operator norm 1.
Element random_hermitian(const AlgebraShape& shape, Rng& rng);
/// Positive element of random rank (rank one about half of the time).
Element random_positive(const AlgebraShape& shape, Rng& rng);

/// Complex functional scaled to functional norm 1.
Functional random_functional(const AlgebraShape& shape, Rng& rng);
Functional random_hermitian_functional(const AlgebraShape& shape, Rng& rng);
State random_state(const AlgebraShape& shape, Rng& rng);

}  // namespace cstar

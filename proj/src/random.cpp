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

#include "cstar/random.hpp"

namespace cstar {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CMatrix random_ginibre(int rows, int cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  return m;
}

Element random_element(const AlgebraShape& shape, Rng& rng) {
  std::vector<CMatrix> blocks;
  for (int n : shape.blocks()) blocks.push_back(random_ginibre(n, n, rng));
  Element x(shape, std::move(blocks));
  return Complex(1.0 / operator_norm(x)) * x;
}

Element random_hermitian(const AlgebraShape& shape, Rng& rng) {
  std::vector<CMatrix> blocks;
  for (int n : shape.blocks()) {
    const CMatrix g = random_ginibre(n, n, rng);
    blocks.push_back(0.5 * (g + g.adjoint()));
  }
  Element x(shape, std::move(blocks));
  return Complex(1.0 / operator_norm(x)) * x;
}

Element random_positive(const AlgebraShape& shape, Rng& rng) {
  std::vector<CMatrix> blocks;
  const bool pure = rng.uniform() < 0.5;
  for (int n : shape.blocks()) {
    const int rank = pure ? 1 : rng.integer(1, n);
    const CMatrix g = random_ginibre(n, rank, rng);
    blocks.push_back(g * g.adjoint());
  }
  Element x(shape, std::move(blocks));
  return Complex(1.0 / operator_norm(x)) * x;
}

Functional random_functional(const AlgebraShape& shape, Rng& rng) {
  std::vector<CMatrix> blocks;
  for (int n : shape.blocks()) blocks.push_back(random_ginibre(n, n, rng));
  Functional f(shape, std::move(blocks));
  return Complex(1.0 / functional_norm(f)) * f;
}

Functional random_hermitian_functional(const AlgebraShape& shape, Rng& rng) {
  std::vector<CMatrix> blocks;
  for (int n : shape.blocks()) {
    const CMatrix g = random_ginibre(n, n, rng);
    blocks.push_back(0.5 * (g + g.adjoint()));
  }
  Functional f(shape, std::move(blocks));
  return Complex(1.0 / functional_norm(f)) * f;
}

State random_state(const AlgebraShape& shape, Rng& rng) {
  std::vector<CMatrix> blocks;
  double total = 0.0;
  for (int n : shape.blocks()) {
    const CMatrix g = random_ginibre(n, n, rng);
    CMatrix rho = g * g.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    total += rho.trace().real();
    blocks.push_back(std::move(rho));
  }
  for (auto& b : blocks) b /= total;
  return State(Functional(shape, std::move(blocks)));
}

}  // namespace cstar

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
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "cstar/algebra.hpp"

namespace cstar {

inline constexpr double kUnitalTol = 1e-10;
inline constexpr double kChoiTol = 1e-9;
inline constexpr double kPositiveSampleTol = 1e-8;
inline constexpr double kFixedPointTol = 1e-8;

enum class Provenance { Explicit, Kraus, Stochastic };
enum class PositivityClaim { VerifiedCP, SampledPositive, Declared };

std::string_view to_string(Provenance p);
std::string_view to_string(PositivityClaim c);

/// A unital, Hermitian-preserving linear map on a finite-dimensional
/// C*-algebra, stored as a dense D x D superoperator on vectorized elements:
/// vec(T(x)) = matrix() * vec(x).
class MarkovOperator {
 public:
  /// Validates size, unitality and Hermiticity preservation.  A VerifiedCP
  /// claim is checked with the Choi test and a SampledPositive claim with 200
  /// sampled positive inputs; Declared is taken on trust.
  static MarkovOperator from_superoperator(AlgebraShape shape, CMatrix matrix, PositivityClaim claim);

  /// x -> P(sum_k A_k i(x) A_k^*), with i the block-diagonal embedding into
  /// M_N and P the compression back onto the blocks.
  static MarkovOperator from_kraus(AlgebraShape shape, std::vector<CMatrix> kraus);

  /// (Tx)_i = sum_j P_ij x_j on the commutative algebra of dimension d.
  static MarkovOperator from_stochastic(const RMatrix& stochastic);

  static MarkovOperator identity(const AlgebraShape& shape);

  const AlgebraShape& shape() const noexcept { return shape_; }
  const CMatrix& matrix() const noexcept { return matrix_; }
  int dimension() const noexcept { return shape_.dimension(); }
  Provenance provenance() const noexcept { return provenance_; }
  PositivityClaim claim() const noexcept { return claim_; }
  bool is_cp() const noexcept { return claim_ == PositivityClaim::VerifiedCP; }
  const std::vector<CMatrix>& kraus() const noexcept { return kraus_; }
  const RMatrix& stochastic() const noexcept { return stochastic_; }

  Element operator()(const Element& x) const;
  /// matrix() * columns; uses the factored form for tensor products.
  CMatrix apply(const CMatrix& columns) const;
  /// matrix()^T * columns, the action on dual vectors of functionals.
  CMatrix apply_dual(const CMatrix& columns) const;

  friend MarkovOperator tensor(const MarkovOperator& t, const MarkovOperator& s);
  friend MarkovOperator power(const MarkovOperator& t, int n);
  friend MarkovOperator compose(const MarkovOperator& t, const MarkovOperator& s);

 private:
  struct Factors {
    CMatrix left;   // acts on the first tensor factor
    CMatrix right;  // acts on the second tensor factor
    std::vector<int> perm;
  };

  MarkovOperator(AlgebraShape shape, CMatrix matrix, Provenance provenance, PositivityClaim claim);

  CMatrix apply_factored(const CMatrix& columns, bool transposed) const;

  AlgebraShape shape_;
  CMatrix matrix_;
  Provenance provenance_;
  PositivityClaim claim_;
  std::vector<CMatrix> kraus_;
  RMatrix stochastic_;
  std::shared_ptr<const Factors> factors_;
};

/// T (x) S on the tensor algebra, ordered consistently with tensor_shapes.
/// Throws RequiresCP unless both inputs carry VerifiedCP.
MarkovOperator tensor(const MarkovOperator& t, const MarkovOperator& s);
/// T^n; power(T, 0) is the identity.
MarkovOperator power(const MarkovOperator& t, int n);
/// t o s.
MarkovOperator compose(const MarkovOperator& t, const MarkovOperator& s);

/// Choi matrix sum_{kl} E_kl (x) T~(E_kl) of the extension T~ = i o T o P on M_N.
CMatrix choi_matrix(const MarkovOperator& t);

struct CpCheck {
  bool cp = false;
  double min_choi_eigenvalue = 0.0;
};

CpCheck check_cp(const MarkovOperator& t, double tol = kChoiTol);

struct PositivityCheck {
  bool passed = true;
  int trials = 0;
  double min_output_eigenvalue = 0.0;
  std::optional<Element> witness;
};

PositivityCheck check_positive_sampled(const MarkovOperator& t, int trials, std::uint64_t seed = 0);

/// The transpose action psi -> psi o T on functionals.
class DualMap {
 public:
  explicit DualMap(const MarkovOperator& t) : shape_(t.shape()), matrix_(t.matrix().transpose()) {}

  Functional operator()(const Functional& psi) const;
  const CMatrix& matrix() const noexcept { return matrix_; }

 private:
  AlgebraShape shape_;
  CMatrix matrix_;
};

DualMap dual(const MarkovOperator& t);

/// States spanning the fixed functionals of the dual.  Positive unital maps
/// always have at least one.  Throws NumericalDegeneracy when the fixed space
/// is too ill-conditioned to separate.
std::vector<State> invariant_states(const MarkovOperator& t, double tol = kFixedPointTol);

/// Complex Gaussian Kraus operators on C^N normalized so that sum A A^* = 1.
MarkovOperator random_unital_cp(const AlgebraShape& shape, int kraus_count, std::uint64_t seed);

/// A unital CP map whose predual sends every state into a random proper
/// diagonal corner of M_N, so its invariant states are not faithful.
MarkovOperator random_absorbing_corner(const AlgebraShape& shape, int kraus_count, std::uint64_t seed);

}  // namespace cstar

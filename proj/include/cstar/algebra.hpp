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

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cstar {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Absolute tolerance on eigenvalues used by the Hermiticity and positivity
/// predicates.
inline constexpr double kHermitianTol = 1e-10;

// ---------------------------------------------------------------------------
// AlgebraShape
// ---------------------------------------------------------------------------

/// Block structure of a finite-dimensional C*-algebra, i.e. the direct sum
/// M_{n_1} + ... + M_{n_B}.  Commutative algebras are all-ones block lists.
///
/// Elements are vectorized by column-stacking each block and concatenating the
/// blocks in order; `offset(i)` is where block i starts in that vector and
/// `dimension()` is its length D = sum n_i^2.  The block-diagonal embedding
/// into M_N (N = sum n_i) places block i at `embedding_offset(i)`.
class AlgebraShape {
 public:
  explicit AlgebraShape(std::vector<int> blocks);

  static AlgebraShape commutative(int d);

  const std::vector<int>& blocks() const noexcept { return blocks_; }
  int block_count() const noexcept { return static_cast<int>(blocks_.size()); }
  int side(int block) const { return blocks_.at(block); }
  int offset(int block) const { return offsets_.at(block); }
  int embedding_offset(int block) const { return embedding_offsets_.at(block); }
  int dimension() const noexcept { return dimension_; }
  int embedding_dimension() const noexcept { return embedding_dimension_; }
  bool is_commutative() const noexcept;

  std::string to_string() const;

  friend bool operator==(const AlgebraShape& a, const AlgebraShape& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  std::vector<int> embedding_offsets_;
  int dimension_ = 0;
  int embedding_dimension_ = 0;
};

/// Shape of A (x) B: blocks (i, j) in row-major order with sides n_i * m_j.
AlgebraShape tensor_shapes(const AlgebraShape& a, const AlgebraShape& b);

/// Index map from the tensor algebra's vectorization to the Kronecker product
/// of the factor vectorizations: result[p] = q means entry p of vec(x (x) y)
/// equals entry q of kron(vec x, vec y).
std::vector<int> tensor_permutation(const AlgebraShape& a, const AlgebraShape& b);

// ---------------------------------------------------------------------------
// AlgebraElement
// ---------------------------------------------------------------------------

class Element {
 public:
  Element(AlgebraShape shape, std::vector<CMatrix> blocks);

  static Element zero(const AlgebraShape& shape);
  static Element unit(const AlgebraShape& shape);
  static Element from_vector(const AlgebraShape& shape, const CVector& v);
  /// Block-diagonal compression of an N x N matrix onto the algebra.
  static Element compress(const AlgebraShape& shape, const CMatrix& full);

  const AlgebraShape& shape() const noexcept { return shape_; }
  const CMatrix& block(int i) const { return blocks_.at(i); }
  const std::vector<CMatrix>& blocks() const noexcept { return blocks_; }

  CVector vectorize() const;
  /// Block-diagonal N x N matrix.
  CMatrix embed() const;

  Element adjoint() const;
  /// x = re + i*im with re = (x + x*)/2 and im = (x - x*)/(2i).
  std::pair<Element, Element> hermitian_parts() const;

  bool is_hermitian(double tol = kHermitianTol) const;
  bool is_positive(double tol = kHermitianTol) const;
  /// Smallest eigenvalue of the Hermitian part, over all blocks.
  double min_eigenvalue() const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(Complex s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Complex s, Element a) { return a *= s; }
  /// Algebra product (blockwise matrix product).
  friend Element operator*(const Element& a, const Element& b);

 private:
  AlgebraShape shape_;
  std::vector<CMatrix> blocks_;
};

/// max over blocks of the largest singular value.
double operator_norm(const Element& x);

/// Orthonormal (Hilbert-Schmidt) basis of Hermitian elements; its complex span
/// is the whole algebra.
std::vector<Element> hermitian_basis(const AlgebraShape& shape);
/// Same basis as columns of vectorized elements (D x D).
CMatrix hermitian_basis_matrix(const AlgebraShape& shape);

Element tensor_elements(const Element& x, const Element& y);

// ---------------------------------------------------------------------------
// Functional
// ---------------------------------------------------------------------------

/// Linear functional psi(x) = sum_i tr(sigma_i x_i).  The pairing is bilinear
/// (no conjugation), so Hermitian functionals are exactly those with Hermitian
/// density blocks.
class Functional {
 public:
  Functional(AlgebraShape shape, std::vector<CMatrix> densities);

  static Functional zero(const AlgebraShape& shape);
  /// Inverse of dual_vector().
  static Functional from_dual_vector(const AlgebraShape& shape, const CVector& f);

  const AlgebraShape& shape() const noexcept { return shape_; }
  const CMatrix& density(int i) const { return densities_.at(i); }
  const std::vector<CMatrix>& densities() const noexcept { return densities_; }

  /// The vector f with psi(x) = f^T vec(x); blockwise vec(sigma^T).
  CVector dual_vector() const;

  Complex operator()(const Element& x) const;

  bool is_hermitian(double tol = kHermitianTol) const;
  bool is_positive(double tol = kHermitianTol) const;
  bool is_state(double tol = kHermitianTol) const;

  Functional& operator+=(const Functional& other);
  Functional& operator-=(const Functional& other);
  Functional& operator*=(Complex s);

  friend Functional operator+(Functional a, const Functional& b) { return a += b; }
  friend Functional operator-(Functional a, const Functional& b) { return a -= b; }
  friend Functional operator*(Complex s, Functional a) { return a *= s; }

 private:
  AlgebraShape shape_;
  std::vector<CMatrix> densities_;
};

/// Sum of trace norms of the density blocks.
double functional_norm(const Functional& psi);

struct JordanDecomposition {
  Functional positive;
  Functional negative;
};

/// h = h+ - h- with ||h|| = ||h+|| + ||h-||, from the positive and negative
/// spectral parts of each density.  Throws NotHermitian.
JordanDecomposition jordan_decompose(const Functional& h, double tol = kHermitianTol);

/// psi = re + i*im with both parts Hermitian.
std::pair<Functional, Functional> hermitian_split(const Functional& psi);

Functional tensor_functionals(const Functional& a, const Functional& b);

/// A functional that has been checked to be a state.
class State {
 public:
  /// Throws InvalidArgument when `f` is not a state within `tol`.
  explicit State(Functional f, double tol = kHermitianTol);

  /// Rescales a positive functional to unit trace.
  static State normalize(const Functional& positive, double tol = kHermitianTol);
  /// Normalized trace on the block-diagonal embedding (sigma_i = I / N).
  static State embedding_trace(const AlgebraShape& shape);

  const Functional& functional() const noexcept { return f_; }
  const AlgebraShape& shape() const noexcept { return f_.shape(); }
  Complex operator()(const Element& x) const { return f_(x); }
  CVector dual_vector() const { return f_.dual_vector(); }

 private:
  Functional f_;
};

/// Trace norm of a square matrix (sum of singular values).
double trace_norm(const CMatrix& m);
/// Largest singular value of a square matrix.
double spectral_norm(const CMatrix& m);

}  // namespace cstar

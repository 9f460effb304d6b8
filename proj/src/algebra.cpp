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

#include "cstar/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cstar/error.hpp"

namespace cstar {

namespace {

void require_same_shape(const AlgebraShape& a, const AlgebraShape& b, const char* what) {
  if (!(a == b)) {
    throw Error(ErrorKind::ShapeMismatch,
                std::string(what) + ": " + a.to_string() + " vs " + b.to_string());
  }
}

void check_blocks(const AlgebraShape& shape, const std::vector<CMatrix>& blocks, const char* what) {
  if (static_cast<int>(blocks.size()) != shape.block_count()) {
    throw Error(ErrorKind::ShapeMismatch, std::string(what) + ": expected " +
                                              std::to_string(shape.block_count()) + " blocks, got " +
                                              std::to_string(blocks.size()));
  }
  for (int i = 0; i < shape.block_count(); ++i) {
    const int n = shape.side(i);
    if (blocks[i].rows() != n || blocks[i].cols() != n) {
      throw Error(ErrorKind::ShapeMismatch, std::string(what) + ": block " + std::to_string(i) +
                                                " must be " + std::to_string(n) + "x" +
                                                std::to_string(n));
    }
  }
}

double hermitian_defect(const CMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

double min_hermitian_eigenvalue(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

// ---------------------------------------------------------------------------

AlgebraShape::AlgebraShape(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorKind::InvalidArgument, "algebra needs at least one block");
  for (int n : blocks_) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "block sides must be positive");
    offsets_.push_back(dimension_);
    embedding_offsets_.push_back(embedding_dimension_);
    dimension_ += n * n;
    embedding_dimension_ += n;
  }
}

AlgebraShape AlgebraShape::commutative(int d) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "commutative dimension must be positive");
  return AlgebraShape(std::vector<int>(static_cast<std::size_t>(d), 1));
}

bool AlgebraShape::is_commutative() const noexcept {
  return std::all_of(blocks_.begin(), blocks_.end(), [](int n) { return n == 1; });
}

std::string AlgebraShape::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < blocks_.size(); ++i) out << (i ? "," : "") << blocks_[i];
  out << ')';
  return out.str();
}

AlgebraShape tensor_shapes(const AlgebraShape& a, const AlgebraShape& b) {
  std::vector<int> blocks;
  blocks.reserve(a.blocks().size() * b.blocks().size());
  for (int n : a.blocks())
    for (int m : b.blocks()) blocks.push_back(n * m);
  return AlgebraShape(std::move(blocks));
}

std::vector<int> tensor_permutation(const AlgebraShape& a, const AlgebraShape& b) {
  const AlgebraShape t = tensor_shapes(a, b);
  const int db = b.dimension();
  std::vector<int> perm(static_cast<std::size_t>(t.dimension()));
  int block = 0;
  for (int i = 0; i < a.block_count(); ++i) {
    for (int j = 0; j < b.block_count(); ++j, ++block) {
      const int n = a.side(i);
      const int m = b.side(j);
      const int base = t.offset(block);
      for (int ap = 0; ap < n; ++ap)
        for (int bp = 0; bp < m; ++bp)
          for (int aa = 0; aa < n; ++aa)
            for (int bb = 0; bb < m; ++bb) {
              const int r = aa * m + bb;
              const int c = ap * m + bp;
              const int p = base + c * (n * m) + r;
              const int q = (a.offset(i) + ap * n + aa) * db + (b.offset(j) + bp * m + bb);
              perm[p] = q;
            }
    }
  }
  return perm;
}

// ---------------------------------------------------------------------------

Element::Element(AlgebraShape shape, std::vector<CMatrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  check_blocks(shape_, blocks_, "element");
}

Element Element::zero(const AlgebraShape& shape) {
  std::vector<CMatrix> blocks;
  for (int n : shape.blocks()) blocks.push_back(CMatrix::Zero(n, n));
  return Element(shape, std::move(blocks));
}

Element Element::unit(const AlgebraShape& shape) {
  std::vector<CMatrix> blocks;
  for (int n : shape.blocks()) blocks.push_back(CMatrix::Identity(n, n));
  return Element(shape, std::move(blocks));
}

Element Element::from_vector(const AlgebraShape& shape, const CVector& v) {
  if (v.size() != shape.dimension()) {
    throw Error(ErrorKind::ShapeMismatch, "vector length " + std::to_string(v.size()) +
                                              " does not match algebra dimension " +
                                              std::to_string(shape.dimension()));
  }
  std::vector<CMatrix> blocks;
  for (int i = 0; i < shape.block_count(); ++i) {
    const int n = shape.side(i);
    blocks.emplace_back(Eigen::Map<const CMatrix>(v.data() + shape.offset(i), n, n));
  }
  return Element(shape, std::move(blocks));
}

Element Element::compress(const AlgebraShape& shape, const CMatrix& full) {
  const int big = shape.embedding_dimension();
  if (full.rows() != big || full.cols() != big) {
    throw Error(ErrorKind::ShapeMismatch, "compression expects an N x N matrix");
  }
  std::vector<CMatrix> blocks;
  for (int i = 0; i < shape.block_count(); ++i) {
    const int o = shape.embedding_offset(i);
    const int n = shape.side(i);
    blocks.emplace_back(full.block(o, o, n, n));
  }
  return Element(shape, std::move(blocks));
}

CVector Element::vectorize() const {
  CVector v(shape_.dimension());
  for (int i = 0; i < shape_.block_count(); ++i) {
    const int n = shape_.side(i);
    Eigen::Map<CMatrix>(v.data() + shape_.offset(i), n, n) = blocks_[i];
  }
  return v;
}

CMatrix Element::embed() const {
  const int big = shape_.embedding_dimension();
  CMatrix full = CMatrix::Zero(big, big);
  for (int i = 0; i < shape_.block_count(); ++i) {
    const int o = shape_.embedding_offset(i);
    full.block(o, o, shape_.side(i), shape_.side(i)) = blocks_[i];
  }
  return full;
}

Element Element::adjoint() const {
  std::vector<CMatrix> blocks;
  for (const auto& b : blocks_) blocks.push_back(b.adjoint());
  return Element(shape_, std::move(blocks));
}

std::pair<Element, Element> Element::hermitian_parts() const {
  std::vector<CMatrix> re, im;
  for (const auto& b : blocks_) {
    re.push_back(0.5 * (b + b.adjoint()));
    im.push_back(Complex(0.0, -0.5) * (b - b.adjoint()));
  }
  return {Element(shape_, std::move(re)), Element(shape_, std::move(im))};
}

bool Element::is_hermitian(double tol) const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [tol](const CMatrix& b) { return hermitian_defect(b) <= tol; });
}

bool Element::is_positive(double tol) const {
  return is_hermitian(tol) && min_eigenvalue() >= -tol;
}

double Element::min_eigenvalue() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks_) lo = std::min(lo, min_hermitian_eigenvalue(b));
  return lo;
}

Element& Element::operator+=(const Element& other) {
  require_same_shape(shape_, other.shape_, "element sum");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += other.blocks_[i];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_shape(shape_, other.shape_, "element difference");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= other.blocks_[i];
  return *this;
}

Element& Element::operator*=(Complex s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  require_same_shape(a.shape(), b.shape(), "element product");
  std::vector<CMatrix> blocks;
  for (int i = 0; i < a.shape().block_count(); ++i) blocks.push_back(a.block(i) * b.block(i));
  return Element(a.shape(), std::move(blocks));
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

double operator_norm(const Element& x) {
  double norm = 0.0;
  for (const auto& b : x.blocks()) norm = std::max(norm, spectral_norm(b));
  return norm;
}

std::vector<Element> hermitian_basis(const AlgebraShape& shape) {
  std::vector<Element> basis;
  basis.reserve(static_cast<std::size_t>(shape.dimension()));
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < shape.block_count(); ++i) {
    const int n = shape.side(i);
    auto make = [&](int a, int b, Complex vab, Complex vba) {
      Element e = Element::zero(shape);
      std::vector<CMatrix> blocks = e.blocks();
      blocks[i](a, b) += vab;
      if (a != b) blocks[i](b, a) += vba;
      return Element(shape, std::move(blocks));
    };
    for (int a = 0; a < n; ++a) basis.push_back(make(a, a, 1.0, 0.0));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        basis.push_back(make(a, b, r, r));
        basis.push_back(make(a, b, Complex(0, r), Complex(0, -r)));
      }
  }
  return basis;
}

CMatrix hermitian_basis_matrix(const AlgebraShape& shape) {
  const auto basis = hermitian_basis(shape);
  CMatrix m(shape.dimension(), shape.dimension());
  for (std::size_t k = 0; k < basis.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = basis[k].vectorize();
  return m;
}

Element tensor_elements(const Element& x, const Element& y) {
  const AlgebraShape t = tensor_shapes(x.shape(), y.shape());
  std::vector<CMatrix> blocks;
  for (const auto& a : x.blocks())
    for (const auto& b : y.blocks()) {
      CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
          k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
      blocks.push_back(std::move(k));
    }
  return Element(t, std::move(blocks));
}

// ---------------------------------------------------------------------------

Functional::Functional(AlgebraShape shape, std::vector<CMatrix> densities)
    : shape_(std::move(shape)), densities_(std::move(densities)) {
  check_blocks(shape_, densities_, "functional");
}

Functional Functional::zero(const AlgebraShape& shape) {
  std::vector<CMatrix> blocks;
  for (int n : shape.blocks()) blocks.push_back(CMatrix::Zero(n, n));
  return Functional(shape, std::move(blocks));
}

Functional Functional::from_dual_vector(const AlgebraShape& shape, const CVector& f) {
  if (f.size() != shape.dimension()) {
    throw Error(ErrorKind::ShapeMismatch, "dual vector length does not match algebra dimension");
  }
  std::vector<CMatrix> blocks;
  for (int i = 0; i < shape.block_count(); ++i) {
    const int n = shape.side(i);
    blocks.emplace_back(Eigen::Map<const CMatrix>(f.data() + shape.offset(i), n, n).transpose());
  }
  return Functional(shape, std::move(blocks));
}

CVector Functional::dual_vector() const {
  CVector f(shape_.dimension());
  for (int i = 0; i < shape_.block_count(); ++i) {
    const int n = shape_.side(i);
    Eigen::Map<CMatrix>(f.data() + shape_.offset(i), n, n) = densities_[i].transpose();
  }
  return f;
}

Complex Functional::operator()(const Element& x) const {
  require_same_shape(shape_, x.shape(), "functional evaluation");
  Complex total = 0.0;
  for (int i = 0; i < shape_.block_count(); ++i) {
    // tr(sigma x) without forming the product.
    total += densities_[i].transpose().cwiseProduct(x.block(i)).sum();
  }
  return total;
}

bool Functional::is_hermitian(double tol) const {
  return std::all_of(densities_.begin(), densities_.end(),
                     [tol](const CMatrix& b) { return hermitian_defect(b) <= tol; });
}

bool Functional::is_positive(double tol) const {
  if (!is_hermitian(tol)) return false;
  return std::all_of(densities_.begin(), densities_.end(),
                     [tol](const CMatrix& b) { return min_hermitian_eigenvalue(b) >= -tol; });
}

bool Functional::is_state(double tol) const {
  if (!is_positive(tol)) return false;
  Complex tr = 0.0;
  for (const auto& b : densities_) tr += b.trace();
  return std::abs(tr - 1.0) <= tol;
}

Functional& Functional::operator+=(const Functional& other) {
  require_same_shape(shape_, other.shape_, "functional sum");
  for (std::size_t i = 0; i < densities_.size(); ++i) densities_[i] += other.densities_[i];
  return *this;
}

Functional& Functional::operator-=(const Functional& other) {
  require_same_shape(shape_, other.shape_, "functional difference");
  for (std::size_t i = 0; i < densities_.size(); ++i) densities_[i] -= other.densities_[i];
  return *this;
}

Functional& Functional::operator*=(Complex s) {
  for (auto& b : densities_) b *= s;
  return *this;
}

double functional_norm(const Functional& psi) {
  double total = 0.0;
  for (const auto& b : psi.densities()) total += trace_norm(b);
  return total;
}

JordanDecomposition jordan_decompose(const Functional& h, double tol) {
  std::vector<CMatrix> pos, neg;
  for (int i = 0; i < h.shape().block_count(); ++i) {
    const CMatrix& s = h.density(i);
    const double defect = hermitian_defect(s);
    if (defect > tol) {
      throw Error(ErrorKind::NotHermitian, "density block " + std::to_string(i) +
                                               " deviates from Hermitian by " + std::to_string(defect));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (s + s.adjoint()));
    const auto& vals = es.eigenvalues();
    const CMatrix& vecs = es.eigenvectors();
    const RVector up = vals.cwiseMax(0.0);
    const RVector down = (-vals).cwiseMax(0.0);
    pos.push_back(vecs * up.cast<Complex>().asDiagonal() * vecs.adjoint());
    neg.push_back(vecs * down.cast<Complex>().asDiagonal() * vecs.adjoint());
  }
  return {Functional(h.shape(), std::move(pos)), Functional(h.shape(), std::move(neg))};
}

std::pair<Functional, Functional> hermitian_split(const Functional& psi) {
  std::vector<CMatrix> re, im;
  for (const auto& s : psi.densities()) {
    re.push_back(0.5 * (s + s.adjoint()));
    im.push_back(Complex(0.0, -0.5) * (s - s.adjoint()));
  }
  return {Functional(psi.shape(), std::move(re)), Functional(psi.shape(), std::move(im))};
}

Functional tensor_functionals(const Functional& a, const Functional& b) {
  // tr(kron(s, t) kron(x, y)) = tr(s x) tr(t y), so densities tensor blockwise.
  const Element ea(a.shape(), a.densities());
  const Element eb(b.shape(), b.densities());
  const Element k = tensor_elements(ea, eb);
  return Functional(k.shape(), k.blocks());
}

State::State(Functional f, double tol) : f_(std::move(f)) {
  if (!f_.is_state(tol)) {
    throw Error(ErrorKind::InvalidArgument, "functional is not a state (PSD densities with unit total trace)");
  }
}

State State::normalize(const Functional& positive, double tol) {
  Complex tr = 0.0;
  for (const auto& b : positive.densities()) tr += b.trace();
  if (tr.real() <= tol) throw Error(ErrorKind::InvalidArgument, "cannot normalize a zero functional");
  Functional f = (1.0 / tr.real()) * positive;
  // Symmetrize away rounding so the state predicate is exact in structure.
  auto [re, im] = hermitian_split(f);
  (void)im;
  return State(std::move(re), tol);
}

State State::embedding_trace(const AlgebraShape& shape) {
  std::vector<CMatrix> blocks;
  const double w = 1.0 / shape.embedding_dimension();
  for (int n : shape.blocks()) blocks.push_back(CMatrix::Identity(n, n) * w);
  return State(Functional(shape, std::move(blocks)));
}

}  // namespace cstar

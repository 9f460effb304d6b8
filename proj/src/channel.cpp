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

#include "cstar/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cstar/error.hpp"
#include "cstar/random.hpp"

namespace cstar {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Explicit: return "explicit";
    case Provenance::Kraus: return "kraus";
    case Provenance::Stochastic: return "stochastic";
  }
  return "explicit";
}

std::string_view to_string(PositivityClaim c) {
  switch (c) {
    case PositivityClaim::VerifiedCP: return "verified_cp";
    case PositivityClaim::SampledPositive: return "sampled_positive";
    case PositivityClaim::Declared: return "declared";
  }
  return "declared";
}

namespace {

double max_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

void require_unital(const AlgebraShape& shape, const CMatrix& m) {
  const CVector one = Element::unit(shape).vectorize();
  const double err = max_abs(m * one - one);
  if (err > kUnitalTol) {
    std::ostringstream os;
    os << "T(1) differs from 1 by " << err;
    throw Error(ErrorKind::NotUnital, os.str());
  }
}

void require_hermitian_preserving(const AlgebraShape& shape, const CMatrix& m) {
  for (const Element& h : hermitian_basis(shape)) {
    const Element out = Element::from_vector(shape, m * h.vectorize());
    for (int b = 0; b < shape.block_count(); ++b) {
      const CMatrix& blk = out.block(b);
      const double err = (blk - blk.adjoint()).cwiseAbs().maxCoeff();
      if (err > kUnitalTol) {
        std::ostringstream os;
        os << "image of a Hermitian basis element has anti-Hermitian part " << err;
        throw Error(ErrorKind::NotHermitianPreserving, os.str());
      }
    }
  }
}

CMatrix inverse_sqrt_psd(const CMatrix& m, double floor, bool* singular) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  const RVector ev = es.eigenvalues();
  *singular = ev.minCoeff() < floor;
  if (*singular) return {};
  return es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

MarkovOperator::MarkovOperator(AlgebraShape shape, CMatrix matrix, Provenance provenance, PositivityClaim claim)
    : shape_(std::move(shape)), matrix_(std::move(matrix)), provenance_(provenance), claim_(claim) {}

MarkovOperator MarkovOperator::from_superoperator(AlgebraShape shape, CMatrix matrix, PositivityClaim claim) {
  const int d = shape.dimension();
  if (matrix.rows() != d || matrix.cols() != d) {
    std::ostringstream os;
    os << "superoperator is " << matrix.rows() << "x" << matrix.cols() << ", expected " << d << "x" << d;
    throw Error(ErrorKind::ShapeMismatch, os.str());
  }
  require_unital(shape, matrix);
  require_hermitian_preserving(shape, matrix);
  MarkovOperator t(std::move(shape), std::move(matrix), Provenance::Explicit, claim);
  if (claim == PositivityClaim::VerifiedCP) {
    const CpCheck cp = check_cp(t);
    if (!cp.cp) {
      std::ostringstream os;
      os << "Choi matrix has eigenvalue " << cp.min_choi_eigenvalue;
      throw Error(ErrorKind::NotCompletelyPositive, os.str());
    }
  } else if (claim == PositivityClaim::SampledPositive) {
    const PositivityCheck pc = check_positive_sampled(t, 200, 0);
    if (!pc.passed) {
      std::ostringstream os;
      os << "a positive input is mapped to an element with eigenvalue " << pc.min_output_eigenvalue;
      throw Error(ErrorKind::NotPositive, os.str());
    }
  }
  return t;
}

MarkovOperator MarkovOperator::from_kraus(AlgebraShape shape, std::vector<CMatrix> kraus) {
  const int n = shape.embedding_dimension();
  if (kraus.empty()) throw Error(ErrorKind::InvalidArgument, "Kraus list is empty");
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    if (kraus[k].rows() != n || kraus[k].cols() != n) {
      std::ostringstream os;
      os << "Kraus operator " << k << " is " << kraus[k].rows() << "x" << kraus[k].cols() << ", expected " << n << "x"
         << n;
      throw Error(ErrorKind::ShapeMismatch, os.str());
    }
  }

  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& a : kraus) sum += a * a.adjoint();
  const Element image_of_one = Element::compress(shape, sum);
  const double err = max_abs(image_of_one.vectorize() - Element::unit(shape).vectorize());
  if (err > kUnitalTol) {
    std::ostringstream os;
    os << "compressed sum of A A^* differs from 1 by " << err;
    throw Error(ErrorKind::NotUnital, os.str());
  }

  // Column p is vec(P(sum_k A_k E A_k^*)) for the matrix unit E = e_r e_c^T of
  // block i; A E A^* = (A e_r)(A e_c)^*.
  const int dim = shape.dimension();
  CMatrix m = CMatrix::Zero(dim, dim);
  for (int i = 0; i < shape.block_count(); ++i) {
    const int ni = shape.side(i);
    const int oi = shape.embedding_offset(i);
    for (int c = 0; c < ni; ++c) {
      for (int r = 0; r < ni; ++r) {
        const int p = shape.offset(i) + c * ni + r;
        for (int j = 0; j < shape.block_count(); ++j) {
          const int nj = shape.side(j);
          const int oj = shape.embedding_offset(j);
          CMatrix blk = CMatrix::Zero(nj, nj);
          for (const auto& a : kraus)
            blk.noalias() += a.block(oj, oi + r, nj, 1) * a.block(oj, oi + c, nj, 1).adjoint();
          m.block(shape.offset(j), p, nj * nj, 1) = Eigen::Map<const CVector>(blk.data(), nj * nj);
        }
      }
    }
  }
  MarkovOperator t(std::move(shape), std::move(m), Provenance::Kraus, PositivityClaim::VerifiedCP);
  t.kraus_ = std::move(kraus);
  return t;
}

MarkovOperator MarkovOperator::from_stochastic(const RMatrix& p) {
  if (p.rows() != p.cols() || p.rows() < 1) throw Error(ErrorKind::NotStochastic, "stochastic matrix must be square");
  for (int i = 0; i < p.rows(); ++i) {
    for (int j = 0; j < p.cols(); ++j) {
      if (!(p(i, j) >= -1e-14)) {
        std::ostringstream os;
        os << "row " << i << " has negative entry " << p(i, j) << " at column " << j;
        throw Error(ErrorKind::NotStochastic, os.str());
      }
    }
    const double s = p.row(i).sum();
    if (!(std::abs(s - 1.0) <= 1e-12)) {
      std::ostringstream os;
      os << "row " << i << " sums to " << s;
      throw Error(ErrorKind::NotStochastic, os.str());
    }
  }
  MarkovOperator t(AlgebraShape::commutative(static_cast<int>(p.rows())), p.cast<Complex>(), Provenance::Stochastic,
                   PositivityClaim::VerifiedCP);
  t.stochastic_ = p;
  return t;
}

MarkovOperator MarkovOperator::identity(const AlgebraShape& shape) {
  const int d = shape.dimension();
  return MarkovOperator(shape, CMatrix::Identity(d, d), Provenance::Explicit, PositivityClaim::VerifiedCP);
}

Element MarkovOperator::operator()(const Element& x) const {
  if (!(x.shape() == shape_)) throw Error(ErrorKind::ShapeMismatch, "element shape does not match operator");
  return Element::from_vector(shape_, apply(x.vectorize()));
}

CMatrix MarkovOperator::apply(const CMatrix& columns) const {
  if (factors_) return apply_factored(columns, false);
  return matrix_ * columns;
}

CMatrix MarkovOperator::apply_dual(const CMatrix& columns) const {
  if (factors_) return apply_factored(columns, true);
  return matrix_.transpose() * columns;
}

CMatrix MarkovOperator::apply_factored(const CMatrix& columns, bool transposed) const {
  const Factors& f = *factors_;
  const int da = static_cast<int>(f.left.rows());
  const int db = static_cast<int>(f.right.rows());
  const int d = da * db;
  CMatrix out(d, columns.cols());
  CMatrix w(db, da);
  for (int c = 0; c < columns.cols(); ++c) {
    // Kronecker index q = qa * db + qb is entry (qb, qa) of the db x da matrix w.
    for (int p = 0; p < d; ++p) w.data()[f.perm[p]] = columns(p, c);
    const CMatrix w2 = transposed ? CMatrix(f.right.transpose() * w * f.left)
                                  : CMatrix(f.right * w * f.left.transpose());
    for (int p = 0; p < d; ++p) out(p, c) = w2.data()[f.perm[p]];
  }
  return out;
}

MarkovOperator tensor(const MarkovOperator& t, const MarkovOperator& s) {
  if (!t.is_cp() || !s.is_cp())
    throw Error(ErrorKind::RequiresCP, "tensor products are only formed for completely positive operators");
  const AlgebraShape shape = tensor_shapes(t.shape(), s.shape());
  const std::vector<int> perm = tensor_permutation(t.shape(), s.shape());
  const int d = shape.dimension();
  const int db = s.dimension();
  CMatrix m(d, d);
  for (int pc = 0; pc < d; ++pc) {
    const int qa = perm[pc] / db, qb = perm[pc] % db;
    for (int pr = 0; pr < d; ++pr) {
      const int ra = perm[pr] / db, rb = perm[pr] % db;
      m(pr, pc) = t.matrix()(ra, qa) * s.matrix()(rb, qb);
    }
  }
  MarkovOperator out(shape, std::move(m), Provenance::Explicit, PositivityClaim::VerifiedCP);
  auto f = std::make_shared<MarkovOperator::Factors>();
  f->left = t.matrix();
  f->right = s.matrix();
  f->perm = perm;
  out.factors_ = std::move(f);
  return out;
}

MarkovOperator power(const MarkovOperator& t, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "power exponent must be non-negative");
  const int d = t.dimension();
  CMatrix result = CMatrix::Identity(d, d);
  CMatrix base = t.matrix();
  for (int k = n; k > 0; k >>= 1) {
    if (k & 1) result = result * base;
    if (k > 1) base = base * base;
  }
  const PositivityClaim claim = n == 0 ? PositivityClaim::VerifiedCP : t.claim();
  MarkovOperator out(t.shape(), std::move(result), Provenance::Explicit, claim);
  if (t.factors_ && n > 0) {
    auto f = std::make_shared<MarkovOperator::Factors>(*t.factors_);
    CMatrix l = CMatrix::Identity(f->left.rows(), f->left.cols());
    CMatrix r = CMatrix::Identity(f->right.rows(), f->right.cols());
    for (int k = 0; k < n; ++k) {
      l = l * t.factors_->left;
      r = r * t.factors_->right;
    }
    f->left = std::move(l);
    f->right = std::move(r);
    out.factors_ = std::move(f);
  }
  return out;
}

MarkovOperator compose(const MarkovOperator& t, const MarkovOperator& s) {
  if (!(t.shape() == s.shape())) throw Error(ErrorKind::ShapeMismatch, "compose needs operators on the same algebra");
  PositivityClaim claim = PositivityClaim::Declared;
  if (t.is_cp() && s.is_cp()) {
    claim = PositivityClaim::VerifiedCP;
  } else if (t.claim() != PositivityClaim::Declared && s.claim() != PositivityClaim::Declared) {
    claim = PositivityClaim::SampledPositive;
  }
  return MarkovOperator(t.shape(), t.matrix() * s.matrix(), Provenance::Explicit, claim);
}

CMatrix choi_matrix(const MarkovOperator& t) {
  const AlgebraShape& shape = t.shape();
  const int n = shape.embedding_dimension();
  CMatrix choi = CMatrix::Zero(n * n, n * n);
  // P(E_kl) vanishes unless k and l sit in the same block.
  for (int i = 0; i < shape.block_count(); ++i) {
    const int ni = shape.side(i);
    const int oi = shape.embedding_offset(i);
    for (int c = 0; c < ni; ++c) {
      for (int r = 0; r < ni; ++r) {
        const CVector image = t.matrix().col(shape.offset(i) + c * ni + r);
        const CMatrix full = Element::from_vector(shape, image).embed();
        choi.block((oi + r) * n, (oi + c) * n, n, n) = full;
      }
    }
  }
  return choi;
}

CpCheck check_cp(const MarkovOperator& t, double tol) {
  const CMatrix choi = choi_matrix(t);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (choi + choi.adjoint()), Eigen::EigenvaluesOnly);
  CpCheck out;
  out.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  out.cp = out.min_choi_eigenvalue >= -tol;
  return out;
}

PositivityCheck check_positive_sampled(const MarkovOperator& t, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  Rng rng(seed);
  PositivityCheck out;
  out.min_output_eigenvalue = std::numeric_limits<double>::infinity();
  for (int k = 0; k < trials; ++k) {
    const Element x = random_positive(t.shape(), rng);
    const double ev = t(x).min_eigenvalue();
    out.trials = k + 1;
    out.min_output_eigenvalue = std::min(out.min_output_eigenvalue, ev);
    if (ev < -kPositiveSampleTol) {
      out.passed = false;
      out.witness = x;
      break;
    }
  }
  return out;
}

Functional DualMap::operator()(const Functional& psi) const {
  if (!(psi.shape() == shape_)) throw Error(ErrorKind::ShapeMismatch, "functional shape does not match operator");
  return Functional::from_dual_vector(shape_, matrix_ * psi.dual_vector());
}

DualMap dual(const MarkovOperator& t) { return DualMap(t); }

std::vector<State> invariant_states(const MarkovOperator& t, double tol) {
  const AlgebraShape& shape = t.shape();
  const int d = t.dimension();
  const CMatrix a = t.matrix().transpose() - CMatrix::Identity(d, d);
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector sv = svd.singularValues();
  int rank = 0;
  while (rank < d && sv(rank) > tol) ++rank;
  const int k = d - rank;
  if (k == 0) throw Error(ErrorKind::NumericalDegeneracy, "dual operator has no fixed functional");

  // Left null space of A^T is conj(U_s), right null space of A is V_s.  Their
  // pairing is invertible iff eigenvalue 1 is semisimple.
  const CMatrix left = svd.matrixV().rightCols(k);
  const CMatrix right = svd.matrixU().rightCols(k).conjugate();
  const CMatrix gram = left.transpose() * right;
  const RVector gsv = Eigen::JacobiSVD<CMatrix>(gram).singularValues();
  const double cond = gsv(gsv.size() - 1) > 0 ? gsv(0) / gsv(gsv.size() - 1) : INFINITY;
  if (!(cond <= 1e10)) {
    std::ostringstream os;
    os << "fixed space of the dual has condition number " << cond;
    throw Error(ErrorKind::NumericalDegeneracy, os.str());
  }

  // Each fixed functional splits into Hermitian parts and then Jordan parts,
  // all still fixed (positive unital maps commute with both splits).
  std::vector<Functional> candidates;
  for (int c = 0; c < k; ++c) {
    const Functional psi = Functional::from_dual_vector(shape, left.col(c));
    const auto [re, im] = hermitian_split(psi);
    for (const Functional& h : {re, im}) {
      const JordanDecomposition jd = jordan_decompose(h, 1e-8);
      candidates.push_back(jd.positive);
      candidates.push_back(jd.negative);
    }
  }
  double scale = 0.0;
  for (const auto& c : candidates) scale = std::max(scale, functional_norm(c));

  std::vector<State> states;
  CMatrix basis(d, 0);
  for (const Functional& c : candidates) {
    const double nrm = functional_norm(c);
    if (nrm <= 1e-6 * scale) continue;
    const State s = State::normalize(c, 1e-8);
    const CVector f = s.dual_vector();
    if (basis.cols() > 0) {
      const CVector resid = f - basis * basis.colPivHouseholderQr().solve(f);
      if (resid.norm() <= 1e-6 * f.norm()) continue;
    }
    basis.conservativeResize(d, basis.cols() + 1);
    basis.col(basis.cols() - 1) = f;
    states.push_back(s);
    if (static_cast<int>(states.size()) == k) break;
  }

  const DualMap dm(t);
  for (const State& s : states) {
    const double drift = functional_norm(dm(s.functional()) - s.functional());
    if (drift > tol) {
      std::ostringstream os;
      os << "extracted state is not invariant, drift " << drift;
      throw Error(ErrorKind::NumericalDegeneracy, os.str());
    }
  }
  if (states.empty()) throw Error(ErrorKind::NumericalDegeneracy, "no positive fixed functional found");
  return states;
}

MarkovOperator random_unital_cp(const AlgebraShape& shape, int kraus_count, std::uint64_t seed) {
  if (kraus_count < 1) throw Error(ErrorKind::InvalidArgument, "kraus_count must be at least 1");
  const int n = shape.embedding_dimension();
  Rng rng(seed);
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<CMatrix> a;
    CMatrix m = CMatrix::Zero(n, n);
    for (int k = 0; k < kraus_count; ++k) {
      a.push_back(random_ginibre(n, n, rng));
      m += a.back() * a.back().adjoint();
    }
    bool singular = false;
    const CMatrix inv = inverse_sqrt_psd(m, 1e-12, &singular);
    if (singular) continue;
    for (auto& ak : a) ak = inv * ak;
    return MarkovOperator::from_kraus(shape, std::move(a));
  }
  throw Error(ErrorKind::SingularNormalization, "normalization matrix stayed singular after 10 draws");
}

MarkovOperator random_absorbing_corner(const AlgebraShape& shape, int kraus_count, std::uint64_t seed) {
  if (kraus_count < 1) throw Error(ErrorKind::InvalidArgument, "kraus_count must be at least 1");
  const int n = shape.embedding_dimension();
  Rng rng(seed);
  std::vector<int> coords(n);
  std::iota(coords.begin(), coords.end(), 0);
  std::shuffle(coords.begin(), coords.end(), rng.engine());
  const int keep = n > 1 ? rng.integer(1, n - 1) : 1;
  RVector q = RVector::Zero(n);
  for (int c = 0; c < keep; ++c) q(coords[c]) = 1.0;
  // M = sum G^* Q G has rank at most count * keep.
  const int count = std::max(kraus_count, (n + keep - 1) / keep);

  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<CMatrix> g;
    CMatrix m = CMatrix::Zero(n, n);
    for (int k = 0; k < count; ++k) {
      g.push_back(q.cast<Complex>().asDiagonal() * random_ginibre(n, n, rng));
      m += g.back().adjoint() * g.back();
    }
    bool singular = false;
    const CMatrix inv = inverse_sqrt_psd(m, 1e-12, &singular);
    if (singular) continue;
    // B_k = Q G_k M^{-1/2} is trace preserving with range in the corner Q;
    // the Heisenberg picture uses A_k = B_k^*.
    std::vector<CMatrix> a;
    for (const auto& gk : g) a.push_back((gk * inv).adjoint());
    return MarkovOperator::from_kraus(shape, std::move(a));
  }
  throw Error(ErrorKind::SingularNormalization, "normalization matrix stayed singular after 10 draws");
}

}  // namespace cstar

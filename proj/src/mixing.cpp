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

#include "cstar/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cstar/error.hpp"
#include "cstar/random.hpp"

namespace cstar {

MixingConfig MixingConfig::tightened(double factor) const {
  MixingConfig c = *this;
  c.spectral.cluster_radius /= factor;
  c.spectral.peripheral_tol /= factor;
  c.spectral.rank_tol /= factor;
  c.residual_tol /= factor;
  c.estimator_tol /= factor;
  c.decay_tol /= factor;
  return c;
}

std::string to_string(const Verdict& v) {
  switch (v.value) {
    case VerdictValue::True: return "true";
    case VerdictValue::False: return "false";
    case VerdictValue::Unsupported: return "unsupported";
  }
  return "unsupported";
}

DynamicalSystem::DynamicalSystem(MarkovOperator t, State phi, double tol) : t_(std::move(t)), phi_(std::move(phi)) {
  if (!(phi_.shape() == t_.shape())) throw Error(ErrorKind::ShapeMismatch, "state and operator live on different algebras");
  const CVector f = phi_.dual_vector();
  const Functional drift = Functional::from_dual_vector(t_.shape(), t_.apply_dual(f) - f);
  residual_ = functional_norm(drift);
  if (residual_ > tol) {
    std::ostringstream os;
    os << "||phi o T - phi||_1 = " << residual_;
    throw Error(ErrorKind::NotInvariant, os.str());
  }
}

DynamicalSystem tensor_system(const DynamicalSystem& sys) {
  const Functional pp = tensor_functionals(sys.state().functional(), sys.state().functional());
  return DynamicalSystem(tensor(sys.op(), sys.op()), State(pp, 1e-8), 1e-8);
}

State canonical_invariant_state(const MarkovOperator& t, const SpectralConfig& cfg) {
  const CMatrix c = cesaro_projector_spectral(t, cfg);
  const CVector f = c.transpose() * State::embedding_trace(t.shape()).dual_vector();
  const auto [re, im] = hermitian_split(Functional::from_dual_vector(t.shape(), f));
  (void)im;
  return State::normalize(re, 1e-8);
}

bool envelope_decrease(const std::vector<double>& values, double tol) {
  const int n = static_cast<int>(values.size());
  if (n == 0) return true;
  double recent = 0.0, earlier = 0.0;
  for (int k = n / 2 + 1; k <= n; ++k) recent = std::max(recent, values[k - 1]);
  for (int k = n / 4 + 1; k <= n / 2; ++k) earlier = std::max(earlier, values[k - 1]);
  return recent <= tol || recent <= 0.75 * earlier;
}

namespace {

std::vector<int> dyadic_points(int n) {
  std::vector<int> pts;
  for (int c = 1; c < n; c *= 2) pts.push_back(c);
  pts.push_back(n);
  return pts;
}

Trace make_trace(std::string label, const std::vector<double>& values, bool tends) {
  Trace t;
  t.label = std::move(label);
  for (int c : dyadic_points(static_cast<int>(values.size()))) {
    t.n.push_back(c);
    t.value.push_back(values[c - 1]);
  }
  t.tends_to_zero = tends;
  return t;
}

std::vector<double> cesaro(const std::vector<double>& a) {
  std::vector<double> out(a.size());
  long double s = 0.0L;
  for (std::size_t k = 0; k < a.size(); ++k) {
    s += a[k];
    out[k] = static_cast<double>(s / static_cast<long double>(k + 1));
  }
  return out;
}

// Operator norm of a vectorized Hermitian element.
double hermitian_norm(const AlgebraShape& shape, const CVector& v) {
  double best = 0.0;
  for (int b = 0; b < shape.block_count(); ++b) {
    const int n = shape.side(b);
    const int o = shape.offset(b);
    if (n == 1) {
      best = std::max(best, std::abs(v(o)));
      continue;
    }
    const Eigen::Map<const CMatrix> blk(v.data() + o, n, n);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (blk + blk.adjoint()), Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  return best;
}

// Matrix of z -> z sigma on vectorized elements: (sigma^T (x) I) per block.
CMatrix right_multiplier(const Functional& phi) {
  const AlgebraShape& shape = phi.shape();
  const int d = shape.dimension();
  CMatrix r = CMatrix::Zero(d, d);
  for (int b = 0; b < shape.block_count(); ++b) {
    const int n = shape.side(b);
    const int o = shape.offset(b);
    const CMatrix& s = phi.density(b);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) r(o + j * n + a, o + i * n + a) = s(i, j);
  }
  return r;
}

struct PairResidual {
  double max = 0.0;
  BasisPairWitness witness;
};

// max over Hermitian basis pairs of |phi(y C x) - phi(y) phi(x)|.
PairResidual ergodic_residual(const AlgebraShape& shape, const CMatrix& c, const Functional& phi) {
  const CMatrix basis = hermitian_basis_matrix(shape);
  const CVector f = phi.dual_vector();
  const CVector e = Element::unit(shape).vectorize();
  const CMatrix z = c * basis - e * (f.transpose() * basis);
  // phi(y z) = tr(y (z sigma)) = vec(y)^T vec((z sigma)^T).
  const CMatrix r = right_multiplier(phi) * z;
  CMatrix w(r.rows(), r.cols());
  for (int b = 0; b < shape.block_count(); ++b) {
    const int n = shape.side(b);
    const int o = shape.offset(b);
    for (int col = 0; col < r.cols(); ++col)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) w(o + j * n + i, col) = r(o + i * n + j, col);
  }
  const RMatrix res = (basis.transpose() * w).cwiseAbs();
  PairResidual out;
  Eigen::Index yi = 0, xi = 0;
  out.max = res.size() ? res.maxCoeff(&yi, &xi) : 0.0;
  out.witness = {static_cast<int>(xi), static_cast<int>(yi), out.max};
  return out;
}

// Random Hermitian x with a random state psi, iterated forward.
struct ForwardPass {
  std::vector<std::vector<double>> dev_norm;    // ||T^k x - phi(x)1||, k = 0..N
  std::vector<std::vector<double>> mean_dev;    // ||(1/n) sum_{k<n} T^k x - phi(x)1||, n = 1..N
  std::vector<std::vector<double>> state_avg;   // |(1/n) sum_{k<n} psi(T^k x) - phi(x)|, n = 1..N
  std::vector<std::vector<double>> state_pt;    // |psi(T^n x) - phi(x)|, n = 1..N
};

// Random complex x, y: phi(y T^k x) - phi(y) phi(x), k = 0..N-1.
struct PairPass {
  std::vector<std::vector<Complex>> corr;
};

struct Ctx {
  const DynamicalSystem& sys;
  MixingConfig cfg;
  SpectralSummary summary;
  CVector f;
  CVector e;

  std::optional<DynamicalSystem> tsys;
  std::optional<CMatrix> tcesaro;
  std::optional<ForwardPass> fwd;
  std::optional<PairPass> pairs;
  std::optional<ErgodicResult> ergodic;

  Ctx(const DynamicalSystem& s, const MixingConfig& c) : sys(s), cfg(c) {
    summary = spectrum(sys.op(), cfg.spectral);
    if (summary.defective_peripheral)
      throw Error(ErrorKind::DefectivePeripheral, "peripheral spectrum is not semisimple; the map is not power bounded");
    f = sys.state().dual_vector();
    e = Element::unit(sys.shape()).vectorize();
  }

  const AlgebraShape& shape() const { return sys.shape(); }
  int dim() const { return sys.shape().dimension(); }

  const CMatrix& tensor_cesaro() {
    if (!tcesaro) {
      tsys.emplace(tensor_system(sys));
      tcesaro = eigenprojector(tsys->op().matrix(), 1.0, cfg.spectral);
    }
    return *tcesaro;
  }

  const ForwardPass& forward() {
    if (fwd) return *fwd;
    const int n = cfg.horizon, s = cfg.samples, d = dim();
    Rng rng(derive_seed(cfg.seed, 11));
    CMatrix v(d, s), psi(d, s);
    std::vector<double> phix(s);
    for (int j = 0; j < s; ++j) {
      v.col(j) = random_hermitian(shape(), rng).vectorize();
      psi.col(j) = random_state(shape(), rng).dual_vector();
      phix[j] = (f.transpose() * v.col(j))(0).real();
    }
    ForwardPass p;
    p.dev_norm.assign(s, std::vector<double>(n + 1));
    p.mean_dev.assign(s, std::vector<double>(n));
    p.state_avg.assign(s, std::vector<double>(n));
    p.state_pt.assign(s, std::vector<double>(n));
    CMatrix sum = CMatrix::Zero(d, s);
    std::vector<Complex> ssum(s);
    for (int k = 0; k <= n; ++k) {
      for (int j = 0; j < s; ++j) {
        const CVector col = v.col(j);
        p.dev_norm[j][k] = hermitian_norm(shape(), col - phix[j] * e);
        const Complex val = (psi.col(j).transpose() * col)(0);
        if (k >= 1) p.state_pt[j][k - 1] = std::abs(val - phix[j]);
        if (k < n) {
          sum.col(j) += col;
          ssum[j] += val;
          p.state_avg[j][k] = std::abs(ssum[j] / static_cast<double>(k + 1) - phix[j]);
          p.mean_dev[j][k] = hermitian_norm(shape(), sum.col(j) / static_cast<double>(k + 1) - phix[j] * e);
        }
      }
      if (k < n) v = sys.op().apply(v);
    }
    fwd = std::move(p);
    return *fwd;
  }

  const PairPass& pair_pass() {
    if (pairs) return *pairs;
    const int n = cfg.horizon, s = cfg.samples, d = dim();
    Rng rng(derive_seed(cfg.seed, 23));
    CMatrix v(d, s), g(d, s);
    std::vector<Complex> base(s);
    const Functional& phi = sys.state().functional();
    for (int j = 0; j < s; ++j) {
      const Element x = random_element(shape(), rng);
      const Element y = random_element(shape(), rng);
      std::vector<CMatrix> dens;
      for (int b = 0; b < shape().block_count(); ++b) dens.push_back(phi.density(b) * y.block(b));
      // psi_y(v) = phi(y v) = tr(sigma y v).
      g.col(j) = Functional(shape(), std::move(dens)).dual_vector();
      v.col(j) = x.vectorize();
      base[j] = phi(y) * phi(x);
    }
    PairPass p;
    p.corr.assign(s, std::vector<Complex>(n));
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < s; ++j) p.corr[j][k] = (g.col(j).transpose() * v.col(j))(0) - base[j];
      if (k + 1 < n) v = sys.op().apply(v);
    }
    pairs = std::move(p);
    return *pairs;
  }

  void disagree(const std::string& what) const {
    if (cfg.strict) throw Error(ErrorKind::MethodDisagreement, what);
  }
};

EstimatorResult estimate(const std::vector<std::vector<double>>& series, const std::string& label, double tol) {
  EstimatorResult r;
  r.verdict = true;
  for (std::size_t j = 0; j < series.size(); ++j) {
    const bool t = envelope_decrease(series[j], tol);
    r.verdict = r.verdict && t;
    r.traces.push_back(make_trace(label + "[" + std::to_string(j) + "]", series[j], t));
  }
  return r;
}

std::string route_summary(std::initializer_list<std::pair<const char*, int>> routes) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, v] : routes) {
    os << (first ? "" : ", ") << name << "=" << (v < 0 ? "unsupported" : v ? "true" : "false");
    first = false;
  }
  return os.str();
}

ErgodicResult run_ergodic(Ctx& ctx) {
  if (ctx.ergodic) return *ctx.ergodic;
  ErgodicResult r;
  const PairResidual pr = ergodic_residual(ctx.shape(), ctx.summary.cesaro_matrix, ctx.sys.state().functional());
  r.max_residual = pr.max;
  const bool spectral = pr.max <= ctx.cfg.residual_tol;
  r.verdict = Verdict::of(spectral);
  if (!spectral) r.witness = pr.witness;

  std::vector<std::vector<double>> series;
  for (const auto& c : ctx.pair_pass().corr) {
    std::vector<double> a(c.size());
    Complex s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      s += c[k];
      a[k] = std::abs(s / static_cast<double>(k + 1));
    }
    series.push_back(std::move(a));
  }
  r.estimator = estimate(series, "correlation_cesaro", ctx.cfg.estimator_tol);
  r.agree = r.estimator.verdict == spectral;
  if (!r.agree)
    ctx.disagree("ergodic: " + route_summary({{"spectral", spectral}, {"estimator", r.estimator.verdict}}));
  ctx.ergodic = r;
  return r;
}

StrictErgodicResult run_strictly_ergodic(Ctx& ctx) {
  StrictErgodicResult r;
  const int d = ctx.dim();
  r.fixed_space_dim = ctx.summary.fixed_space_dim;
  const bool spectral = r.fixed_space_dim == 1;
  r.verdict = Verdict::of(spectral);
  r.defect_rank = static_cast<int>(range_of_defect(ctx.sys.op(), ctx.cfg.spectral.rank_tol).cols());

  const std::vector<State> inv = invariant_states(ctx.sys.op());
  r.invariant_state_count = static_cast<int>(inv.size());
  if (inv.size() == 1) {
    r.state_distance = functional_norm(inv[0].functional() - ctx.sys.state().functional());
    if (spectral && r.state_distance > ctx.cfg.residual_tol) {
      std::ostringstream os;
      os << "unique invariant state differs from phi by " << r.state_distance;
      if (ctx.cfg.strict) throw Error(ErrorKind::InvariantStateMismatch, os.str());
      r.disagreement = os.str();
      r.agree = false;
    }
  }

  const ForwardPass& fp = ctx.forward();
  r.norm_estimator = estimate(fp.mean_dev, "mean_deviation_norm", ctx.cfg.decay_tol);
  r.state_estimator = estimate(fp.state_avg, "state_average", ctx.cfg.decay_tol);
  const bool rank_route = r.defect_rank == d - 1;
  const bool state_route = r.invariant_state_count == 1;
  if (r.norm_estimator.verdict != spectral || r.state_estimator.verdict != spectral || rank_route != spectral ||
      state_route != spectral) {
    r.agree = false;
    r.disagreement = "strictly ergodic: " + route_summary({{"fixed_space", spectral},
                                                           {"norm_estimator", r.norm_estimator.verdict},
                                                           {"state_estimator", r.state_estimator.verdict},
                                                           {"defect_rank", rank_route},
                                                           {"unique_state", state_route}});
    ctx.disagree(r.disagreement);
  }
  return r;
}

double peripheral_residual(Ctx& ctx) {
  const CMatrix rs = right_multiplier(ctx.sys.state().functional());
  double worst = 0.0;
  for (const auto& c : ctx.summary.peripheral) {
    if (std::abs(c.value - 1.0) <= ctx.cfg.spectral.cluster_radius) continue;
    const CMatrix p = eigenprojector(ctx.sys.op().matrix(), c.value, ctx.cfg.spectral);
    worst = std::max(worst, (rs * p).cwiseAbs().maxCoeff());
  }
  return worst;
}

WeakMixingResult run_weakly_mixing(Ctx& ctx) {
  WeakMixingResult r;
  const ErgodicResult erg = run_ergodic(ctx);
  r.peripheral_residual = peripheral_residual(ctx);
  r.peripheral_route = erg.verdict.is_true() && r.peripheral_residual <= ctx.cfg.residual_tol;

  std::vector<std::vector<double>> sq_series;
  r.estimator.verdict = true;
  int j = 0;
  for (const auto& c : ctx.pair_pass().corr) {
    std::vector<double> mag(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) mag[k] = std::abs(c[k]);
    const KvnRecord rec = kvn_record(BoundedSequence(std::move(mag)), static_cast<int>(c.size()),
                                     ctx.cfg.estimator_tol);
    r.kvn_consistent = r.kvn_consistent && rec.agree;
    r.estimator.verdict = r.estimator.verdict && rec.sq_tends_to_zero;
    Trace t;
    t.label = "squared_correlation_cesaro[" + std::to_string(j++) + "]";
    t.n = rec.checkpoints;
    t.value = rec.sq_trace;
    t.tends_to_zero = rec.sq_tends_to_zero;
    r.estimator.traces.push_back(std::move(t));
  }

  if (!ctx.sys.op().is_cp()) {
    const std::string why = "tensor route needs a completely positive operator";
    if (ctx.cfg.strict) throw Error(ErrorKind::RequiresCP, why);
    r.tensor_route = Verdict::unsupported(why);
    r.verdict = Verdict::unsupported(why);
    return r;
  }
  const CMatrix& tc = ctx.tensor_cesaro();
  const PairResidual tr = ergodic_residual(ctx.tsys->shape(), tc, ctx.tsys->state().functional());
  r.tensor_residual = tr.max;
  r.tensor_route = Verdict::of(tr.max <= ctx.cfg.residual_tol);
  r.verdict = r.tensor_route;
  const bool t = r.tensor_route.is_true();
  if (t != r.peripheral_route || t != r.estimator.verdict || !r.kvn_consistent) {
    r.agree = false;
    r.disagreement = "weakly mixing: " + route_summary({{"tensor_ergodic", t},
                                                        {"peripheral_projections", r.peripheral_route},
                                                        {"estimator", r.estimator.verdict},
                                                        {"density_zero_consistent", r.kvn_consistent}});
    ctx.disagree(r.disagreement);
  }
  return r;
}

StrictWeakMixingResult run_strictly_weak_mixing(Ctx& ctx) {
  StrictWeakMixingResult r;
  bool only_one = true;
  for (const auto& c : ctx.summary.peripheral)
    if (std::abs(c.value - 1.0) > ctx.cfg.spectral.cluster_radius) only_one = false;
  r.spectral_route = ctx.summary.fixed_space_dim == 1 && only_one;
  r.verdict = Verdict::of(r.spectral_route);

  const ForwardPass& fp = ctx.forward();
  std::vector<std::vector<double>> series;
  for (const auto& dn : fp.dev_norm) series.push_back(cesaro(std::vector<double>(dn.begin(), dn.end() - 1)));
  r.estimator = estimate(series, "cesaro_of_deviation_norms", ctx.cfg.decay_tol);

  int b = -1;
  if (ctx.sys.op().is_cp()) {
    const CMatrix& tc = ctx.tensor_cesaro();
    r.tensor_fixed_space_dim = static_cast<int>(std::lround(tc.trace().real()));
    r.tensor_route = Verdict::of(r.tensor_fixed_space_dim == 1);
    b = r.tensor_route.is_true();
  } else {
    r.tensor_route = Verdict::unsupported("tensor route needs a completely positive operator");
  }
  const bool a = r.spectral_route;
  if (a != r.estimator.verdict || (b >= 0 && (b == 1) != a)) {
    r.agree = false;
    r.disagreement = "strictly weak mixing: " +
                     route_summary({{"spectral", a}, {"tensor_strictly_ergodic", b}, {"estimator", r.estimator.verdict}});
    ctx.disagree(r.disagreement);
  }
  return r;
}

ExactResult run_exact(Ctx& ctx) {
  ExactResult r;
  const PowerLimit pl = power_limit(ctx.summary, ctx.sys.op(), ctx.cfg.spectral);
  r.power_limit_converges = pl.converges;
  r.offending = pl.offending;
  const CMatrix rank_one = ctx.e * ctx.f.transpose();
  r.limit_distance = (ctx.summary.cesaro_matrix - rank_one).cwiseAbs().maxCoeff();
  const bool spectral = pl.converges && r.limit_distance <= ctx.cfg.residual_tol;
  r.verdict = Verdict::of(spectral);

  const int h = ctx.cfg.exact_horizon, s = ctx.cfg.samples, d = ctx.dim();
  Rng rng(derive_seed(ctx.cfg.seed, 37));
  CMatrix u(d, s);
  std::vector<Complex> mass(s);
  for (int j = 0; j < s; ++j) {
    u.col(j) = random_functional(ctx.shape(), rng).dual_vector();
    mass[j] = (u.col(j).transpose() * ctx.e)(0);
  }
  std::vector<std::vector<double>> series(s, std::vector<double>(h));
  for (int n = 1; n <= h; ++n) {
    u = ctx.sys.op().apply_dual(u);
    for (int j = 0; j < s; ++j)
      series[j][n - 1] = functional_norm(Functional::from_dual_vector(ctx.shape(), u.col(j) - mass[j] * ctx.f));
  }
  r.estimator.verdict = true;
  for (int j = 0; j < s; ++j) {
    const bool t = series[j][h - 1] <= ctx.cfg.decay_tol || envelope_decrease(series[j], ctx.cfg.decay_tol);
    r.estimator.verdict = r.estimator.verdict && t;
    r.estimator.traces.push_back(make_trace("dual_power_distance[" + std::to_string(j) + "]", series[j], t));
  }
  r.agree = r.estimator.verdict == spectral;
  if (!r.agree) ctx.disagree("exact: " + route_summary({{"power_limit", spectral}, {"estimator", r.estimator.verdict}}));
  return r;
}

PhiErgodicResult run_phi_ergodic(Ctx& ctx, const ExactResult& exact) {
  PhiErgodicResult r;
  const ForwardPass& fp = ctx.forward();
  std::vector<std::vector<double>> cesaro_series, norm_series;
  for (const auto& dn : fp.dev_norm) {
    cesaro_series.push_back(cesaro(std::vector<double>(dn.begin(), dn.end() - 1)));
    norm_series.emplace_back(dn.begin() + 1, dn.end());
  }
  r.cesaro_estimator = estimate(cesaro_series, "cesaro_of_deviation_norms", ctx.cfg.decay_tol);
  r.norm_estimator = estimate(norm_series, "deviation_norm", ctx.cfg.decay_tol);
  r.state_estimator = estimate(fp.state_pt, "state_deviation", ctx.cfg.decay_tol);
  r.cesaro_of_norms = r.cesaro_estimator.verdict;
  r.norm_limit = r.norm_estimator.verdict;
  r.phi_ergodic = exact.verdict.is_true();
  r.state_limit = r.state_estimator.verdict;
  r.verdict = exact.verdict;

  std::vector<std::string> broken;
  if (r.cesaro_of_norms != r.norm_limit) broken.push_back("(i) <=> (ii)");
  if (r.norm_limit && !r.phi_ergodic) broken.push_back("(ii) => (iii)");
  if (r.phi_ergodic && !r.state_limit) broken.push_back("(iii) => (iv)");
  if (!broken.empty()) {
    r.implications_hold = false;
    std::ostringstream os;
    os << "phi-ergodic conditions (i)=" << r.cesaro_of_norms << " (ii)=" << r.norm_limit << " (iii)=" << r.phi_ergodic
       << " (iv)=" << r.state_limit << " break";
    for (const auto& b : broken) os << " " << b;
    r.violation = os.str();
    if (ctx.cfg.strict) throw Error(ErrorKind::ImplicationViolation, r.violation);
  }
  return r;
}

PeripheralObstruction run_obstruction(Ctx& ctx) {
  PeripheralObstruction r;
  const CMatrix mt = ctx.sys.op().matrix().transpose();
  Eigen::ComplexEigenSolver<CMatrix> es(mt, true);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::EigensolverFailure, "eigenvalue iteration did not converge");
  int best = -1;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const Complex a = es.eigenvalues()(i);
    if (std::abs(a) < 1.0 - ctx.cfg.spectral.peripheral_tol) continue;
    if (std::abs(a - 1.0) <= ctx.cfg.spectral.cluster_radius) continue;
    r.eigenvalues.push_back(a);
    // Prefer the smallest rotation, counter-clockwise first.
    if (best < 0) {
      best = i;
      continue;
    }
    const Complex b = es.eigenvalues()(best);
    const double da = std::abs(std::arg(a)), db = std::abs(std::arg(b));
    if (da < db - 1e-9 || (std::abs(da - db) <= 1e-9 && std::arg(a) > std::arg(b))) best = i;
  }
  if (best < 0) return r;
  r.clean = false;
  r.alpha = es.eigenvalues()(best);
  const CVector hv = es.eigenvectors().col(best);
  Functional h = Functional::from_dual_vector(ctx.shape(), hv);
  h *= Complex(1.0 / functional_norm(h));
  r.residual = functional_norm(Functional::from_dual_vector(ctx.shape(), mt * h.dual_vector() - r.alpha * h.dual_vector()));
  r.h = std::move(h);
  return r;
}

}  // namespace

ErgodicResult check_ergodic(const DynamicalSystem& sys, const MixingConfig& cfg) {
  Ctx ctx(sys, cfg);
  return run_ergodic(ctx);
}

StrictErgodicResult check_strictly_ergodic(const DynamicalSystem& sys, const MixingConfig& cfg) {
  Ctx ctx(sys, cfg);
  return run_strictly_ergodic(ctx);
}

WeakMixingResult check_weakly_mixing(const DynamicalSystem& sys, const MixingConfig& cfg) {
  Ctx ctx(sys, cfg);
  return run_weakly_mixing(ctx);
}

StrictWeakMixingResult check_strictly_weak_mixing(const DynamicalSystem& sys, const MixingConfig& cfg) {
  Ctx ctx(sys, cfg);
  return run_strictly_weak_mixing(ctx);
}

ExactResult check_exact(const DynamicalSystem& sys, const MixingConfig& cfg) {
  Ctx ctx(sys, cfg);
  return run_exact(ctx);
}

PhiErgodicResult check_phi_ergodic_equiv(const DynamicalSystem& sys, const MixingConfig& cfg) {
  Ctx ctx(sys, cfg);
  MixingConfig quiet = cfg;
  quiet.strict = false;
  Ctx exact_ctx(sys, quiet);
  const ExactResult ex = run_exact(exact_ctx);
  return run_phi_ergodic(ctx, ex);
}

PeripheralObstruction check_peripheral_obstruction(const DynamicalSystem& sys, const MixingConfig& cfg) {
  Ctx ctx(sys, cfg);
  return run_obstruction(ctx);
}

MixingReport classify(const DynamicalSystem& sys, const MixingConfig& cfg) {
  MixingConfig quiet = cfg;
  quiet.strict = false;
  Ctx ctx(sys, quiet);
  MixingReport rep;
  rep.config = cfg;
  rep.spectrum = ctx.summary;

  rep.ergodic_detail = run_ergodic(ctx);
  rep.strict_ergodic_detail = run_strictly_ergodic(ctx);
  rep.weak_detail = run_weakly_mixing(ctx);
  rep.strict_weak_detail = run_strictly_weak_mixing(ctx);
  rep.exact_detail = run_exact(ctx);
  rep.phi_detail = run_phi_ergodic(ctx, rep.exact_detail);
  rep.obstruction = run_obstruction(ctx);

  rep.ergodic = rep.ergodic_detail.verdict;
  rep.strictly_ergodic = rep.strict_ergodic_detail.verdict;
  rep.weakly_mixing = rep.weak_detail.verdict;
  rep.strictly_weak_mixing = rep.strict_weak_detail.verdict;
  rep.exact = rep.exact_detail.verdict;
  rep.phi_ergodic_equiv = rep.phi_detail.verdict;

  if (!rep.ergodic_detail.agree)
    rep.disagreements.push_back(
        "ergodic: " + route_summary({{"spectral", rep.ergodic.is_true()}, {"estimator", rep.ergodic_detail.estimator.verdict}}));
  if (!rep.strict_ergodic_detail.agree) rep.disagreements.push_back(rep.strict_ergodic_detail.disagreement);
  if (!rep.weak_detail.agree) rep.disagreements.push_back(rep.weak_detail.disagreement);
  if (!rep.strict_weak_detail.agree) rep.disagreements.push_back(rep.strict_weak_detail.disagreement);
  if (!rep.exact_detail.agree)
    rep.disagreements.push_back(
        "exact: " + route_summary({{"power_limit", rep.exact.is_true()}, {"estimator", rep.exact_detail.estimator.verdict}}));
  if (!rep.phi_detail.implications_hold) rep.violations.push_back(rep.phi_detail.violation);

  auto implies = [&](const Verdict& a, const Verdict& b, const char* text) {
    if (a.supported() && b.supported() && a.is_true() && !b.is_true()) rep.violations.push_back(text);
  };
  implies(rep.exact, rep.strictly_weak_mixing, "exact => strictly weak mixing");
  implies(rep.strictly_weak_mixing, rep.strictly_ergodic, "strictly weak mixing => strictly ergodic");
  implies(rep.strictly_weak_mixing, rep.weakly_mixing, "strictly weak mixing => weakly mixing");
  implies(rep.strictly_ergodic, rep.ergodic, "strictly ergodic => ergodic");
  implies(rep.weakly_mixing, rep.ergodic, "weakly mixing => ergodic");
  if (rep.exact.value != rep.strictly_weak_mixing.value)
    rep.violations.push_back("strictly weak mixing and exactness differ in finite dimension");
  if (rep.strictly_weak_mixing.is_true() && !rep.obstruction.clean)
    rep.violations.push_back("strictly weak mixing with a peripheral eigenfunctional");
  return rep;
}

}  // namespace cstar

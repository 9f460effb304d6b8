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

// Acceptance checks.  Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "cstar/error.hpp"
#include "cstar/models.hpp"
#include "cstar/random.hpp"
#include "cstar/sequences.hpp"
#include "cstar/verify.hpp"

using namespace cstar;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<AlgebraShape>& suite_shapes() {
  static const std::vector<AlgebraShape> shapes{AlgebraShape({2}), AlgebraShape({3}), AlgebraShape({1, 1, 2})};
  return shapes;
}

constexpr int kSuiteTrials = 200;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct SuiteTotals {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  std::string first_failure;
};

SuiteTotals run_suite(Theorem t) {
  SuiteTotals s;
  for (const AlgebraShape& shape : suite_shapes()) {
    const VerificationRecord v = verify_theorem(t, shape, kSuiteTrials, 0);
    s.passed += v.passed;
    s.failed += v.failed;
    s.skipped += v.skipped;
    if (s.first_failure.empty() && v.counterexample)
      s.first_failure = "trial " + std::to_string(v.counterexample->trial) + ": " + v.counterexample->detail;
  }
  return s;
}

bool all_true(const MixingReport& r) {
  for (const Verdict* v : {&r.ergodic, &r.weakly_mixing, &r.strictly_ergodic, &r.strictly_weak_mixing, &r.exact,
                           &r.phi_ergodic_equiv})
    if (!v->is_true()) return false;
  return true;
}

void rank_one(Outcome& o) {
  const auto t0 = Clock::now();
  const DynamicalSystem sys = rank_one_system(8);
  const MixingReport r = classify(sys);
  o.require(all_true(r), "all six verdicts true");
  Rng rng(2026);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    Functional psi = random_state(sys.shape(), rng).functional();
    for (int n = 1; n <= 8; ++n) {
      psi = dual(sys.op())(psi);
      worst = std::max(worst, functional_norm(psi - sys.state().functional()));
    }
  }
  o.require(worst <= 1e-12, "state distance after n >= 1 steps");
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "runtime < 1 s");
  o.detail << "max ||psi o T^n - phi||_1 = " << worst << ", " << secs << " s";
}

void rotation(Outcome& o) {
  const auto t0 = Clock::now();
  const RotationModel m = rotation_system(12, 5);
  const MixingReport r = classify(m.system);
  o.require(r.strictly_ergodic.is_true(), "strictly ergodic");
  o.require(r.weakly_mixing.is_false(), "not weakly mixing");
  o.require(r.strictly_weak_mixing.is_false(), "not strictly weak mixing");
  o.require(r.exact.is_false(), "not exact");
  o.require(r.spectrum.peripheral.size() == 12, "12 peripheral eigenvalues");
  double root_error = 0.0;
  for (int p = 0; p < 12; ++p) {
    const Complex root = std::polar(1.0, 2 * M_PI * p / 12);
    double best = 1e300;
    for (const EigenCluster& c : r.spectrum.peripheral) best = std::min(best, std::abs(c.value - root));
    root_error = std::max(root_error, best);
  }
  o.require(root_error <= 1e-10, "peripheral spectrum = twelfth roots of unity");
  o.require(m.witness_residual <= 1e-12, "character eigenrelation");
  o.require(!r.obstruction.clean, "peripheral obstruction found");
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "runtime < 1 s");
  o.detail << "root error " << root_error << ", witness residual " << m.witness_residual << ", " << secs << " s";
}

void markov_chain(Outcome& o) {
  const auto t0 = Clock::now();
  RMatrix p(2, 2);
  p << 0.7, 0.3, 0.4, 0.6;
  const RVector q = Eigen::Vector2d(0.5, 0.5);
  const MarkovChainChannels ch = markov_chain_channels(p, q);
  const CMatrix rho = ch.rho1.functional().density(0);
  CMatrix expect = CMatrix::Zero(2, 2);
  expect(0, 0) = 4.0 / 7.0;
  expect(1, 1) = 3.0 / 7.0;
  o.require((rho - expect).cwiseAbs().maxCoeff() <= 1e-12, "rho1 = diag(4/7, 3/7)");
  o.require(classify(DynamicalSystem(ch.k1, ch.rho1)).exact.is_true(), "K1 system exact");
  o.require(classify(DynamicalSystem(ch.k2, ch.rho2)).exact.is_true(), "K2 system exact");
  double worst = 0.0;
  for (int length = 2; length <= 4; ++length)
    worst = std::max({worst, compatibility_residual(ch.k1, ch.rho1, length),
                      compatibility_residual(ch.k2, ch.rho2, length)});
  o.require(worst <= 1e-10, "compatibility residual at L = 2, 3, 4");
  const DistinctStates ds = distinct_markov_states(p, q, 3);
  o.require(ds.both_states && ds.distance > 0.0, "distinct Markov states at L = 3");
  const double secs = seconds_since(t0);
  o.require(secs < 5.0, "runtime < 5 s");
  o.detail << "max compatibility residual " << worst << ", ||phi_K1 - phi_K2||_1 = " << ds.distance << " at L = 3, "
           << secs << " s";
}

void suite(Outcome& o, Theorem t, double limit_seconds) {
  const auto t0 = Clock::now();
  const SuiteTotals s = run_suite(t);
  const int total = kSuiteTrials * static_cast<int>(suite_shapes().size());
  o.require(s.passed == total, "every instance agrees");
  const double secs = seconds_since(t0);
  if (limit_seconds > 0) o.require(secs < limit_seconds, "runtime limit");
  o.detail << s.passed << "/" << total << " (failed " << s.failed << ", skipped " << s.skipped << "), " << secs
           << " s";
  if (!s.first_failure.empty()) o.detail << "; first failure " << s.first_failure;
}

void suite_with_examples(Outcome& o, Theorem t) {
  const auto t0 = Clock::now();
  const SuiteTotals s = run_suite(t);
  const int total = kSuiteTrials * static_cast<int>(suite_shapes().size());
  o.require(s.passed == total, "every ensemble instance agrees");
  int examples = 0;
  for (const DynamicalSystem& sys : {rank_one_system(8), rotation_system(12, 5).system}) {
    const InstanceOutcome e = verify_instance(t, sys);
    examples += e.holds ? 1 : 0;
  }
  o.require(examples == 2, "both examples agree");
  o.detail << s.passed << "/" << total << " ensemble, " << examples << "/2 examples, " << seconds_since(t0) << " s";
  if (!s.first_failure.empty()) o.detail << "; first failure " << s.first_failure;
}

bool is_square(int k) {
  const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(k))));
  return r * r == k;
}

std::vector<BoundedSequence> sequence_corpus(int n) {
  std::vector<BoundedSequence> out;
  out.emplace_back(std::vector<double>(n, 0.0));
  out.emplace_back(std::vector<double>(n, 1.0));
  std::vector<double> spikes(n);
  for (int k = 1; k <= n; ++k) spikes[k - 1] = is_square(k) ? 1.0 : 0.0;
  out.emplace_back(std::move(spikes));

  Rng rng(4242);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> v(n, 0.0);
    switch (t % 4) {
      case 0: {  // bounded noise around a nonzero level
        const double level = 0.2 + rng.uniform();
        for (double& x : v) x = level + (rng.uniform() - 0.5) * 0.4;
        break;
      }
      case 1: {  // geometric decay
        const double c = 0.5 + rng.uniform(), r = 0.5 + 0.49 * rng.uniform();
        double a = c;
        for (double& x : v) {
          x = a;
          a *= r;
        }
        break;
      }
      case 2: {  // unit spikes on a sparse quadratic set
        const double scale = 0.5 + 2.0 * rng.uniform();
        for (int j = 1;; ++j) {
          const int k = static_cast<int>(std::ceil(scale * j * j));
          if (k > n) break;
          v[k - 1] = rng.uniform() < 0.5 ? -1.0 : 1.0;
        }
        break;
      }
      default: {  // power decay with random signs
        const double alpha = 1.0 + rng.uniform();
        for (int k = 1; k <= n; ++k) v[k - 1] = (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::pow(k, -alpha);
        break;
      }
    }
    out.emplace_back(std::move(v));
  }
  return out;
}

void density_zero(Outcome& o) {
  const int n = 1 << 14;
  int agree = 0, sandwich = 0, total = 0;
  for (const BoundedSequence& s : sequence_corpus(n)) {
    ++total;
    agree += check_kvn_equivalence(s, n, 1e-3).agree ? 1 : 0;
    bool ok = true;
    for (int m = 1; m <= n; m *= 2) {
      const double a = cesaro_abs(s, m), q = cesaro_sq(s, m);
      ok = ok && a * a <= q && q <= s.bound() * a;
    }
    sandwich += ok ? 1 : 0;
  }
  o.require(agree == total, "three density-zero conditions agree");
  o.require(sandwich == total, "Cauchy-Schwarz sandwich");
  o.detail << agree << "/" << total << " agree, sandwich holds on " << sandwich << "/" << total;
}

void infrastructure(Outcome& o) {
  Rng rng(10);
  const std::vector<AlgebraShape> shapes{AlgebraShape({2}), AlgebraShape({3}), AlgebraShape({1, 1, 2}),
                                         AlgebraShape({2, 3})};
  double jordan = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Functional h = random_hermitian_functional(shapes[i % shapes.size()], rng);
    const JordanDecomposition j = jordan_decompose(h);
    jordan = std::max(jordan, std::abs(functional_norm(h) - functional_norm(j.positive) - functional_norm(j.negative)));
  }
  o.require(jordan <= 1e-12, "Jordan norm additivity");

  CMatrix tr = CMatrix::Zero(4, 4);
  tr(0, 0) = tr(3, 3) = tr(1, 2) = tr(2, 1) = 1.0;
  const CpCheck cp = check_cp(MarkovOperator::from_superoperator(AlgebraShape({2}), tr, PositivityClaim::Declared));
  o.require(!cp.cp && std::abs(cp.min_choi_eigenvalue + 1.0) <= 1e-9, "transpose flagged with min eigenvalue -1");

  double cesaro = 0.0;
  for (int i = 0; i < 100; ++i) {
    const MarkovOperator t = random_unital_cp(suite_shapes()[i % 3], 2 + i % 3, 7000 + i);
    const CMatrix spectral = cesaro_projector_spectral(t);
    const IterativeCesaro it = cesaro_projector_iterative(t, 1 << 14, 1e-6);
    cesaro = std::max(cesaro, spectral_norm(it.extrapolated - spectral));
  }
  o.require(cesaro <= 1e-6, "spectral vs iterative Cesaro projector");
  o.detail << "Jordan defect " << jordan << ", transpose min Choi eigenvalue " << cp.min_choi_eigenvalue
           << ", Cesaro gap " << cesaro;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {"rank-one example", rank_one},
      {"rotation example", rotation},
      {"Markov chain example", markov_chain},
      {"strict weak mixing routes agree", [](Outcome& o) { suite(o, Theorem::StrictWeakMixing, 300.0); }},
      {"weak mixing equals tensor ergodicity", [](Outcome& o) { suite(o, Theorem::WeakMixingTensor, 300.0); }},
      {"no strictly weak mixing system has a peripheral eigenpair",
       [](Outcome& o) { suite(o, Theorem::PeripheralObstruction, 0.0); }},
      {"strict ergodicity criteria agree", [](Outcome& o) { suite_with_examples(o, Theorem::StrictErgodicity); }},
      {"phi-ergodicity implications and collapse",
       [](Outcome& o) { suite_with_examples(o, Theorem::PhiErgodicity); }},
      {"density-zero equivalence", density_zero},
      {"infrastructure", infrastructure},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2zu  %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

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

#include "cstar/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

#include "cstar/error.hpp"
#include "cstar/random.hpp"

namespace cstar {

namespace {

constexpr std::pair<Theorem, std::string_view> kNames[] = {
    {Theorem::StrictErgodicity, "strict_ergodicity"},
    {Theorem::StrictWeakMixing, "strict_weak_mixing"},
    {Theorem::WeakMixingTensor, "weak_mixing_tensor"},
    {Theorem::PeripheralObstruction, "peripheral_obstruction"},
    {Theorem::PhiErgodicity, "phi_ergodicity"},
    {Theorem::SwmImpliesWm, "swm_implies_wm"},
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

// Runs body(i) for i in [0, n) on up to `threads` workers.
void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  const int workers = std::max(1, std::min(threads, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

std::string_view theorem_name(Theorem t) {
  for (const auto& [k, v] : kNames)
    if (k == t) return v;
  return "unknown";
}

Theorem theorem_from_name(std::string_view name) {
  for (const auto& [k, v] : kNames)
    if (v == name) return k;
  throw Error(ErrorKind::UnknownTheorem, "no verifier named '" + std::string(name) + "'");
}

std::vector<std::string> theorem_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : kNames) out.emplace_back(v);
  return out;
}

int default_threads() {
  if (const char* env = std::getenv("CSTAR_MIXING_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

InstanceOutcome verify_instance(Theorem t, const DynamicalSystem& sys, const MixingConfig& cfg_in) {
  MixingConfig cfg = cfg_in;
  cfg.strict = false;
  InstanceOutcome out;
  auto add = [&](const std::string& name, const std::string& value) { out.conditions.emplace_back(name, value); };
  const bool cp = sys.op().is_cp();

  switch (t) {
    case Theorem::StrictErgodicity: {
      const StrictErgodicResult r = check_strictly_ergodic(sys, cfg);
      const bool fixed = r.verdict.is_true();
      const bool rank = r.defect_rank == sys.shape().dimension() - 1;
      add("fixed_space_one_dimensional", yes_no(fixed));
      add("norm_cesaro_converges", yes_no(r.norm_estimator.verdict));
      add("state_averages_converge", yes_no(r.state_estimator.verdict));
      add("defect_rank_is_D_minus_1", yes_no(rank));
      add("unique_invariant_state", yes_no(r.invariant_state_count == 1));
      out.holds = fixed == r.norm_estimator.verdict && fixed == r.state_estimator.verdict && fixed == rank &&
                  fixed == (r.invariant_state_count == 1);
      out.detail = r.disagreement;
      break;
    }
    case Theorem::StrictWeakMixing: {
      if (!cp) {
        out.applicable = false;
        out.detail = "tensor route needs a completely positive operator";
        break;
      }
      const StrictWeakMixingResult r = check_strictly_weak_mixing(sys, cfg);
      add("spectral", yes_no(r.spectral_route));
      add("tensor_strictly_ergodic", to_string(r.tensor_route));
      add("norm_cesaro_surrogate", yes_no(r.estimator.verdict));
      out.holds = r.agree;
      out.detail = r.disagreement;
      break;
    }
    case Theorem::WeakMixingTensor: {
      if (!cp) {
        out.applicable = false;
        out.detail = "tensor route needs a completely positive operator";
        break;
      }
      const WeakMixingResult r = check_weakly_mixing(sys, cfg);
      add("tensor_ergodic", to_string(r.tensor_route));
      add("peripheral_projections_invisible", yes_no(r.peripheral_route));
      add("squared_correlation_cesaro", yes_no(r.estimator.verdict));
      add("density_zero_conditions_agree", yes_no(r.kvn_consistent));
      out.holds = r.agree;
      out.detail = r.disagreement;
      break;
    }
    case Theorem::PeripheralObstruction: {
      const StrictWeakMixingResult s = check_strictly_weak_mixing(sys, cfg);
      const PeripheralObstruction o = check_peripheral_obstruction(sys, cfg);
      // The tensor route decides independently of the peripheral scan.
      const bool swm = s.tensor_route.supported() ? s.tensor_route.is_true() : s.spectral_route;
      add("strictly_weak_mixing", yes_no(swm));
      add("peripheral_eigenpair", yes_no(!o.clean));
      out.holds = !(swm && !o.clean);
      if (!out.holds) {
        std::ostringstream os;
        os << "strictly weak mixing yet alpha = " << o.alpha << " is a dual eigenvalue";
        out.detail = os.str();
      }
      break;
    }
    case Theorem::PhiErgodicity: {
      const PhiErgodicResult p = check_phi_ergodic_equiv(sys, cfg);
      const StrictWeakMixingResult s = check_strictly_weak_mixing(sys, cfg);
      add("cesaro_of_norms", yes_no(p.cesaro_of_norms));
      add("norm_limit", yes_no(p.norm_limit));
      add("phi_ergodic", yes_no(p.phi_ergodic));
      add("state_limit", yes_no(p.state_limit));
      add("strictly_weak_mixing", yes_no(s.spectral_route));
      out.holds = p.implications_hold && s.spectral_route == p.phi_ergodic;
      out.detail = p.violation;
      if (s.spectral_route != p.phi_ergodic) out.detail += " strictly weak mixing differs from exactness";
      break;
    }
    case Theorem::SwmImpliesWm: {
      if (!cp) {
        out.applicable = false;
        out.detail = "tensor route needs a completely positive operator";
        break;
      }
      const StrictWeakMixingResult s = check_strictly_weak_mixing(sys, cfg);
      const WeakMixingResult w = check_weakly_mixing(sys, cfg);
      add("strictly_weak_mixing", yes_no(s.spectral_route));
      add("weakly_mixing", to_string(w.verdict));
      out.holds = !s.spectral_route || w.verdict.is_true();
      if (!out.holds) out.detail = "strictly weak mixing without weak mixing";
      break;
    }
  }
  return out;
}

EnsembleMember ensemble_member(const AlgebraShape& shape, std::uint64_t seed, int trial) {
  const std::uint64_t s = seed + static_cast<std::uint64_t>(trial);
  const int kraus = 1 + trial % 3;
  MarkovOperator t = random_unital_cp(shape, kraus, s);
  State phi = canonical_invariant_state(t);
  return EnsembleMember{trial, s, kraus, DynamicalSystem(std::move(t), std::move(phi))};
}

VerificationRecord verify_theorem(Theorem t, const AlgebraShape& shape, int trials, std::uint64_t seed,
                                  const MixingConfig& cfg, int threads) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  std::vector<TrialRecord> records(trials);
  std::vector<std::optional<Counterexample>> found(trials);
  parallel_for(trials, threads > 0 ? threads : default_threads(), [&](int i) {
    TrialRecord& rec = records[i];
    rec.trial = i;
    rec.seed = seed + static_cast<std::uint64_t>(i);
    try {
      const EnsembleMember m = ensemble_member(shape, seed, i);
      rec.family = "kraus_" + std::to_string(m.kraus_count);
      MixingConfig c = cfg;
      c.seed = m.seed;
      const InstanceOutcome o = verify_instance(t, m.system, c);
      rec.applicable = o.applicable;
      rec.holds = o.holds;
      rec.conditions = o.conditions;
      rec.detail = o.detail;
      if (o.applicable && !o.holds)
        found[i] = Counterexample{i, m.seed, m.system.op(), m.system.state(), o.detail};
    } catch (const Error& e) {
      rec.holds = false;
      rec.detail = e.what();
    }
  });

  VerificationRecord out;
  out.theorem = t;
  out.shape = shape;
  out.trials = trials;
  out.seed = seed;
  out.config = cfg;
  for (int i = 0; i < trials; ++i) {
    const TrialRecord& r = records[i];
    if (!r.applicable) {
      ++out.skipped;
    } else if (r.holds) {
      ++out.passed;
    } else {
      ++out.failed;
      if (!out.counterexample && found[i]) out.counterexample = found[i];
    }
  }
  out.records = std::move(records);
  return out;
}

namespace {

MarkovOperator probe_channel(const AlgebraShape& shape, int trial, std::uint64_t s, std::string* family) {
  switch (trial % 3) {
    case 0:
      *family = "generic";
      return random_unital_cp(shape, 1 + (trial / 3) % 3, s);
    case 1:
      *family = "absorbing_corner";
      return random_absorbing_corner(shape, 1 + (trial / 3) % 2, s);
    default: {
      *family = "near_unitary";
      Rng rng(derive_seed(s, 3));
      const double eps = std::pow(10.0, -1.0 - 2.0 * rng.uniform());
      const MarkovOperator u = random_unital_cp(shape, 1, s);
      const MarkovOperator noise = random_unital_cp(shape, 2, derive_seed(s, 5));
      std::vector<CMatrix> kraus{std::sqrt(1.0 - eps) * u.kraus()[0]};
      for (const auto& a : noise.kraus()) kraus.push_back(std::sqrt(eps) * a);
      return MarkovOperator::from_kraus(shape, std::move(kraus));
    }
  }
}

struct GapVerdicts {
  bool wm = false, se = false, swm = false;
};

GapVerdicts gap_verdicts(const DynamicalSystem& sys, const MixingConfig& cfg) {
  MixingConfig c = cfg;
  c.strict = false;
  GapVerdicts g;
  g.se = spectrum(sys.op(), c.spectral).fixed_space_dim == 1;
  g.wm = check_weakly_mixing(sys, c).verdict.is_true();
  g.swm = check_strictly_weak_mixing(sys, c).spectral_route;
  return g;
}

}  // namespace

ProbeResult probe_swm_gap(const AlgebraShape& shape, int trials, std::uint64_t seed, const MixingConfig& cfg,
                          int threads) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  std::vector<ProbeRecord> records(trials);
  std::vector<std::optional<Counterexample>> found(trials);
  std::vector<char> rejected(trials, 0);
  parallel_for(trials, threads > 0 ? threads : default_threads(), [&](int i) {
    ProbeRecord& rec = records[i];
    rec.trial = i;
    rec.seed = seed + static_cast<std::uint64_t>(i);
    try {
      MarkovOperator t = probe_channel(shape, i, rec.seed, &rec.family);
      State phi = canonical_invariant_state(t, cfg.spectral);
      for (const auto& dens : phi.functional().densities()) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(dens, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < 1e-9) rec.faithful_state = false;
      }
      const DynamicalSystem sys(std::move(t), std::move(phi));
      MixingConfig c = cfg;
      c.seed = rec.seed;
      const GapVerdicts g = gap_verdicts(sys, c);
      rec.weakly_mixing = g.wm;
      rec.strictly_ergodic = g.se;
      rec.strictly_weak_mixing = g.swm;
      rec.candidate = g.wm && g.se && !g.swm;
      if (rec.candidate) {
        const GapVerdicts tight = gap_verdicts(sys, c.tightened(10.0));
        rec.confirmed = tight.wm && tight.se && !tight.swm;
        if (rec.confirmed) {
          found[i] = Counterexample{i, rec.seed, sys.op(), sys.state(),
                                    "weakly mixing and strictly ergodic but not strictly weak mixing"};
        } else {
          rejected[i] = 1;
        }
      }
    } catch (const Error& e) {
      rec.error = e.what();
    }
  });

  ProbeResult out;
  out.shape = shape;
  out.trials = trials;
  out.seed = seed;
  out.config = cfg;
  for (int i = 0; i < trials; ++i) {
    out.rejected_candidates += rejected[i];
    if (!out.counterexample && found[i]) out.counterexample = found[i];
  }
  out.records = std::move(records);
  return out;
}

}  // namespace cstar

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

#include "cstar/cli.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cstar/io.hpp"
#include "cstar/models.hpp"
#include "cstar/random.hpp"

namespace cstar {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MethodDisagreement:
    case ErrorKind::InvariantStateMismatch:
    case ErrorKind::ImplicationViolation:
    case ErrorKind::EquivalenceViolation:
      return kExitDisagreement;
    case ErrorKind::SingularNormalization:
    case ErrorKind::NumericalDegeneracy:
    case ErrorKind::EigensolverFailure:
    case ErrorKind::DefectivePeripheral:
      return kExitNumerical;
    default:
      return kExitInput;
  }
}

namespace {

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

std::string cplx(Complex z) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string shape_tag(const std::vector<int>& shape) {
  std::string s;
  for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? "-" : "") + std::to_string(shape[i]);
  return s;
}

std::string default_report_path(const std::string& input) {
  const std::string ext = ".json";
  if (input.size() > ext.size() && input.compare(input.size() - ext.size(), ext.size(), ext) == 0)
    return input.substr(0, input.size() - ext.size()) + ".report.json";
  return input + ".report.json";
}

Json overrides_json(const TolOverrides& o) {
  Json j = Json::object();
  if (o.tol_spectral) j["tol_spectral"] = *o.tol_spectral;
  if (o.seed) j["seed"] = *o.seed;
  return j;
}

void print_table(const MixingReport& r, std::ostream& out) {
  auto row = [&](const std::string& name, const Verdict& v, const std::string& witness) {
    out << std::left << std::setw(22) << name << std::setw(13) << to_string(v) << witness << '\n';
  };
  out << std::left << std::setw(22) << "property" << std::setw(13) << "verdict" << "witness" << '\n';
  out << std::string(72, '-') << '\n';

  std::string erg = "max basis-pair residual " + sci(r.ergodic_detail.max_residual);
  row("ergodic", r.ergodic, erg);

  std::string wm = "tensor " + to_string(r.weak_detail.tensor_route) + ", peripheral residual " +
                   sci(r.weak_detail.peripheral_residual);
  row("weakly_mixing", r.weakly_mixing, wm);

  std::ostringstream se;
  se << "fixed space dim " << r.strict_ergodic_detail.fixed_space_dim << ", rank(T - id) "
     << r.strict_ergodic_detail.defect_rank;
  row("strictly_ergodic", r.strictly_ergodic, se.str());

  std::string swm = r.obstruction.clean ? "no peripheral dual eigenpair"
                                        : "dual eigenvalue " + cplx(r.obstruction.alpha) + ", residual " +
                                              sci(r.obstruction.residual);
  row("strictly_weak_mixing", r.strictly_weak_mixing, swm);

  std::ostringstream ex;
  if (r.exact_detail.power_limit_converges)
    ex << "powers converge, limit distance " << sci(r.exact_detail.limit_distance);
  else
    ex << r.exact_detail.offending.size() << " peripheral eigenvalues block convergence";
  row("exact", r.exact, ex.str());

  std::ostringstream pe;
  pe << "(i) " << r.phi_detail.cesaro_of_norms << " (ii) " << r.phi_detail.norm_limit << " (iii) "
     << r.phi_detail.phi_ergodic << " (iv) " << r.phi_detail.state_limit;
  row("phi_ergodic_equiv", r.phi_ergodic_equiv, pe.str());

  out << std::string(72, '-') << '\n';
  out << "peripheral spectrum: " << r.spectrum.peripheral.size() << " eigenvalue(s), spectral radius "
      << std::fixed << std::setprecision(6) << r.spectrum.spectral_radius << std::defaultfloat << '\n';
  for (const auto& d : r.disagreements) out << "disagreement: " << d << '\n';
  for (const auto& v : r.violations) out << "violation: " << v << '\n';
}

/// Classifies a parsed system, writes the report and prints the table.
int classify_file(const SystemFile& file, const Json& input, const std::string& report_path, const TolOverrides& o,
                  const Json& extra, std::ostream& out) {
  MixingConfig cfg = file.config;
  const Json ov = overrides_json(o);
  apply_config(cfg, ov, "flags");
  const DynamicalSystem sys = resolve_system(file);
  const MixingReport r = classify(sys, cfg);
  Json report = report_to_json(r, input);
  report["overrides"] = ov;
  report["operator_claim"] = to_string(sys.op().claim());
  if (!file.state) report["resolved_state"] = state_to_json(sys.state().functional());
  if (!extra.is_null()) report["example"] = extra;
  write_json(report_path, report);
  print_table(r, out);
  out << "report: " << report_path << '\n';
  return r.consistent() ? kExitOk : kExitDisagreement;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

Json rank_one_extra(const DynamicalSystem& sys, int d) {
  Rng rng(derive_seed(0, 41));
  const DualMap dm = dual(sys.op());
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const State psi = random_state(sys.shape(), rng);
    worst = std::max(worst, functional_norm(dm(psi.functional()) - sys.state().functional()));
  }
  return {{"name", "rank-one"}, {"d", d}, {"max_state_distance_after_one_step", worst}, {"random_states", 20}};
}

}  // namespace

int cmd_classify(const ClassifyOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SystemFile file = load_system(opt.input);
    const Json input = system_to_json(file.op, file.state, file.overrides);
    const std::string report = opt.report.empty() ? default_report_path(opt.input) : opt.report;
    return classify_file(file, input, report, opt.overrides, nullptr, out);
  });
}

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Theorem t = theorem_from_name(opt.theorem);
    const AlgebraShape shape(opt.shape);
    const VerificationRecord v = verify_theorem(t, shape, opt.trials, opt.seed, MixingConfig{}, opt.threads);
    const std::string path = opt.out.empty() ? "verify_" + std::string(theorem_name(t)) + "_" + shape_tag(opt.shape) +
                                                   "_seed" + std::to_string(opt.seed) + ".json"
                                             : opt.out;
    write_json(path, verification_to_json(v));
    out << theorem_name(t) << " on " << shape.to_string() << ": " << v.passed << "/" << (v.trials - v.skipped)
        << " passed";
    if (v.skipped) out << ", " << v.skipped << " not applicable";
    out << '\n';
    if (v.counterexample) out << "counterexample at trial " << v.counterexample->trial << ": " << v.counterexample->detail << '\n';
    out << "record: " << path << '\n';
    return v.failed == 0 ? kExitOk : kExitDisagreement;
  });
}

int cmd_example(const ExampleOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string path = opt.out.empty() ? "example_" + opt.name + ".json" : opt.out;
    if (opt.name == "rank-one") {
      const int d = opt.d > 0 ? opt.d : 8;
      const DynamicalSystem sys = rank_one_system(d);
      const Json input = system_to_json(sys.op(), sys.state());
      write_json(path, input);
      out << "system: " << path << '\n';
      const SystemFile file = load_system(path);
      return classify_file(file, input, default_report_path(path), opt.overrides, rank_one_extra(sys, d), out);
    }
    if (opt.name == "rotation") {
      const int d = opt.d > 0 ? opt.d : 12;
      const RotationModel m = rotation_system(d, opt.k);
      const Json input = system_to_json(m.system.op(), m.system.state());
      write_json(path, input);
      out << "system: " << path << '\n';
      const Json extra = {{"name", "rotation"},
                          {"d", d},
                          {"k", opt.k},
                          {"character_eigenvalue", complex_to_json(m.eigenvalue)},
                          {"character_residual", m.witness_residual},
                          {"character", state_to_json(m.witness)}};
      const SystemFile file = load_system(path);
      return classify_file(file, input, default_report_path(path), opt.overrides, extra, out);
    }
    if (opt.name == "markov-chain") {
      if (opt.p.size() != 4) throw Error(ErrorKind::ValidationError, "--P: expected four entries p11,p12,p21,p22");
      if (opt.q.size() != 2) throw Error(ErrorKind::ValidationError, "--q: expected two entries");
      RMatrix p(2, 2);
      p << opt.p[0], opt.p[1], opt.p[2], opt.p[3];
      const RVector q = Eigen::Map<const RVector>(opt.q.data(), 2);
      const MarkovChainChannels ch = markov_chain_channels(p, q);

      Json residuals = Json::array();
      for (int l = 2; l <= opt.length; ++l)
        residuals.push_back({{"length", l},
                             {"first_channel", compatibility_residual(ch.k1, ch.rho1, l)},
                             {"second_channel", compatibility_residual(ch.k2, ch.rho2, l)}});
      const DistinctStates ds = distinct_markov_states(p, q, opt.length);
      Json extra = {{"name", "markov-chain"},
                    {"P", opt.p},
                    {"q", opt.q},
                    {"length", opt.length},
                    {"stationary_state", state_to_json(ch.rho1.functional())},
                    {"compatibility_residuals", std::move(residuals)},
                    {"markov_state_distance", ds.distance},
                    {"both_are_states", ds.both_states}};

      std::string second = path;
      const std::string ext = ".json";
      if (second.size() > ext.size() && second.compare(second.size() - ext.size(), ext.size(), ext) == 0)
        second.resize(second.size() - ext.size());
      second += "_second.json";

      const Json in1 = system_to_json(ch.k1, ch.rho1);
      const Json in2 = system_to_json(ch.k2, ch.rho2);
      write_json(path, in1);
      write_json(second, in2);
      out << "system (first channel): " << path << '\n';
      const int c1 = classify_file(load_system(path), in1, default_report_path(path), opt.overrides, extra, out);
      out << "\nsystem (second channel): " << second << '\n';
      const int c2 = classify_file(load_system(second), in2, default_report_path(second), opt.overrides, extra, out);
      out << "\nMarkov-state distance at length " << opt.length << ": " << sci(ds.distance) << '\n';
      return std::max(c1, c2);
    }
    throw Error(ErrorKind::ValidationError,
                "unknown example '" + opt.name + "'; expected rank-one, rotation or markov-chain");
  });
}

int cmd_probe(const ProbeOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const AlgebraShape shape(opt.shape);
    const ProbeResult p = probe_swm_gap(shape, opt.trials, opt.seed, MixingConfig{}, opt.threads);
    const std::string path = opt.out.empty() ? "probe_swm_gap_" + shape_tag(opt.shape) + "_seed" +
                                                   std::to_string(opt.seed) + ".json"
                                             : opt.out;
    write_json(path, probe_to_json(p));
    int candidates = 0;
    for (const auto& r : p.records) candidates += r.candidate;
    out << "probe on " << shape.to_string() << ", " << p.trials << " trials: " << candidates << " candidate(s), "
        << p.rejected_candidates << " rejected on re-check, "
        << (p.counterexample ? "counterexample found" : "no counterexample") << '\n';
    out << "empirical evidence, not a mathematical answer\n";
    out << "findings: " << path << '\n';
    return kExitOk;
  });
}

}  // namespace cstar

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

#include "cstar/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cstar/error.hpp"

namespace cstar {

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& msg) {
  throw Error(ErrorKind::ValidationError, where + ": " + msg);
}

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

Complex parse_complex(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  invalid(where, "expected a number or an [re, im] pair");
}

CMatrix parse_matrix(const Json& j, const std::string& where, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) {
    std::ostringstream os;
    os << "expected an array of " << rows << " rows";
    invalid(where, os.str());
  }
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    const std::string rw = at(where, r);
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      std::ostringstream os;
      os << "expected " << cols << " entries";
      invalid(rw, os.str());
    }
    for (int c = 0; c < cols; ++c) m(r, c) = parse_complex(row[c], at(rw, c));
  }
  return m;
}

void check_keys(const Json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) invalid(where, "unknown field '" + key + "'");
  }
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) invalid(where, "missing field '" + key + "'");
  return obj.at(key);
}

AlgebraShape parse_algebra(const Json& j) {
  if (!j.is_object()) invalid("algebra", "expected an object");
  check_keys(j, "algebra", {"blocks"});
  const Json& b = require(j, "blocks", "algebra");
  if (!b.is_array() || b.empty()) invalid("algebra.blocks", "expected a non-empty array of block sizes");
  std::vector<int> blocks;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!b[i].is_number_integer() || b[i].get<long long>() < 1 || b[i].get<long long>() > 64)
      invalid(at("algebra.blocks", i), "expected an integer in [1, 64]");
    blocks.push_back(b[i].get<int>());
  }
  return AlgebraShape(std::move(blocks));
}

MarkovOperator parse_operator(const AlgebraShape& shape, const Json& j) {
  if (!j.is_object()) invalid("operator", "expected an object");
  check_keys(j, "operator", {"kind", "data"});
  const Json& kind = require(j, "kind", "operator");
  const Json& data = require(j, "data", "operator");
  if (!kind.is_string()) invalid("operator.kind", "expected a string");
  const std::string k = kind.get<std::string>();
  try {
    if (k == "stochastic") {
      if (!shape.is_commutative()) invalid("operator.kind", "stochastic input needs an algebra of 1x1 blocks");
      const int d = shape.dimension();
      const CMatrix m = parse_matrix(data, "operator.data", d, d);
      if (m.imag().cwiseAbs().maxCoeff() > 0.0) invalid("operator.data", "stochastic entries must be real");
      return MarkovOperator::from_stochastic(m.real());
    }
    if (k == "kraus") {
      if (!data.is_array() || data.empty()) invalid("operator.data", "expected a non-empty array of Kraus matrices");
      const int n = shape.embedding_dimension();
      std::vector<CMatrix> kraus;
      for (std::size_t i = 0; i < data.size(); ++i) kraus.push_back(parse_matrix(data[i], at("operator.data", i), n, n));
      return MarkovOperator::from_kraus(shape, std::move(kraus));
    }
    if (k == "superoperator") {
      const int d = shape.dimension();
      CMatrix m = parse_matrix(data, "operator.data", d, d);
      const MarkovOperator declared = MarkovOperator::from_superoperator(shape, m, PositivityClaim::Declared);
      if (check_cp(declared).cp) return MarkovOperator::from_superoperator(shape, std::move(m), PositivityClaim::VerifiedCP);
      return MarkovOperator::from_superoperator(shape, std::move(m), PositivityClaim::SampledPositive);
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ValidationError) throw;
    invalid("operator", e.what());
  }
  invalid("operator.kind", "expected \"superoperator\", \"kraus\" or \"stochastic\", got \"" + k + "\"");
}

State parse_state(const AlgebraShape& shape, const Json& j) {
  if (!j.is_object()) invalid("state", "expected an object");
  check_keys(j, "state", {"blocks"});
  const Json& b = require(j, "blocks", "state");
  if (!b.is_array() || static_cast<int>(b.size()) != shape.block_count()) {
    std::ostringstream os;
    os << "expected " << shape.block_count() << " density blocks";
    invalid("state.blocks", os.str());
  }
  std::vector<CMatrix> dens;
  for (int i = 0; i < shape.block_count(); ++i)
    dens.push_back(parse_matrix(b[i], at("state.blocks", i), shape.side(i), shape.side(i)));
  try {
    return State(Functional(shape, std::move(dens)), 1e-9);
  } catch (const Error& e) {
    invalid("state", e.what());
  }
}

double positive_number(const Json& v, const std::string& where) {
  if (!v.is_number() || !(v.get<double>() > 0.0) || !std::isfinite(v.get<double>()))
    invalid(where, "expected a positive finite number");
  return v.get<double>();
}

int positive_int(const Json& v, const std::string& where, int min) {
  if (!v.is_number_integer() || v.get<long long>() < min || v.get<long long>() > (1 << 22))
    invalid(where, "expected an integer >= " + std::to_string(min));
  return v.get<int>();
}

Json estimator_to_json(const std::string& check, const EstimatorResult& e) {
  Json out = Json::array();
  for (const Trace& t : e.traces)
    out.push_back({{"check", check}, {"label", t.label}, {"n", t.n}, {"value", t.value}, {"tends_to_zero", t.tends_to_zero}});
  return out;
}

Json complex_list(const std::vector<Complex>& zs) {
  Json out = Json::array();
  for (Complex z : zs) out.push_back(complex_to_json(z));
  return out;
}

Json counterexample_to_json(const std::optional<Counterexample>& c) {
  if (!c) return nullptr;
  return {{"trial", c->trial},
          {"seed", c->seed},
          {"detail", c->detail},
          {"system", system_to_json(c->op, c->state)}};
}

}  // namespace

SystemFile parse_system(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    int line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": " << e.what();
    throw Error(ErrorKind::ParseError, os.str());
  }
  if (!doc.is_object()) invalid("top level", "expected an object");
  check_keys(doc, "top level", {"algebra", "operator", "state", "config", "description"});
  const AlgebraShape shape = parse_algebra(require(doc, "algebra", "top level"));
  MarkovOperator op = parse_operator(shape, require(doc, "operator", "top level"));
  std::optional<State> state;
  if (doc.contains("state")) state.emplace(parse_state(shape, doc.at("state")));
  MixingConfig cfg;
  Json overrides = Json::object();
  if (doc.contains("config")) {
    overrides = doc.at("config");
    apply_config(cfg, overrides);
  }
  return SystemFile{std::move(op), std::move(state), cfg, std::move(overrides)};
}

SystemFile load_system(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ValidationError, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_system(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + std::string(e.what()).substr(to_string(e.kind()).size() + 2));
  }
}

DynamicalSystem resolve_system(const SystemFile& file) {
  if (file.state) {
    try {
      return DynamicalSystem(file.op, *file.state);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotInvariant) invalid("state", e.what());
      throw;
    }
  }
  std::vector<State> states = invariant_states(file.op);
  if (states.size() != 1) {
    std::ostringstream os;
    os << "absent and the operator has " << states.size() << " independent invariant states; give one explicitly";
    invalid("state", os.str());
  }
  return DynamicalSystem(file.op, std::move(states.front()));
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Json real_matrix_to_json(const RMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json operator_to_json(const MarkovOperator& t) {
  switch (t.provenance()) {
    case Provenance::Stochastic:
      return {{"kind", "stochastic"}, {"data", real_matrix_to_json(t.stochastic())}};
    case Provenance::Kraus: {
      Json data = Json::array();
      for (const CMatrix& a : t.kraus()) data.push_back(matrix_to_json(a));
      return {{"kind", "kraus"}, {"data", std::move(data)}};
    }
    case Provenance::Explicit:
      break;
  }
  return {{"kind", "superoperator"}, {"data", matrix_to_json(t.matrix())}};
}

Json state_to_json(const Functional& phi) {
  Json blocks = Json::array();
  for (const CMatrix& d : phi.densities()) blocks.push_back(matrix_to_json(d));
  return {{"blocks", std::move(blocks)}};
}

Json system_to_json(const MarkovOperator& t, const std::optional<State>& phi, const Json& config) {
  Json out = {{"algebra", {{"blocks", t.shape().blocks()}}}, {"operator", operator_to_json(t)}};
  if (phi) out["state"] = state_to_json(phi->functional());
  if (!config.empty()) out["config"] = config;
  return out;
}

Json config_to_json(const MixingConfig& cfg) {
  return {{"cluster_radius", cfg.spectral.cluster_radius},
          {"peripheral_tol", cfg.spectral.peripheral_tol},
          {"rank_tol", cfg.spectral.rank_tol},
          {"max_condition", cfg.spectral.max_condition},
          {"residual_tol", cfg.residual_tol},
          {"estimator_tol", cfg.estimator_tol},
          {"decay_tol", cfg.decay_tol},
          {"horizon", cfg.horizon},
          {"exact_horizon", cfg.exact_horizon},
          {"samples", cfg.samples},
          {"seed", cfg.seed}};
}

void apply_config(MixingConfig& cfg, const Json& overrides, const std::string& where) {
  if (!overrides.is_object()) invalid(where, "expected an object");
  for (const auto& [key, v] : overrides.items()) {
    const std::string w = where + "." + key;
    if (key == "tol_spectral") {
      cfg.spectral.peripheral_tol = cfg.spectral.rank_tol = positive_number(v, w);
    } else if (key == "cluster_radius") {
      cfg.spectral.cluster_radius = positive_number(v, w);
    } else if (key == "peripheral_tol") {
      cfg.spectral.peripheral_tol = positive_number(v, w);
    } else if (key == "rank_tol") {
      cfg.spectral.rank_tol = positive_number(v, w);
    } else if (key == "max_condition") {
      cfg.spectral.max_condition = positive_number(v, w);
    } else if (key == "residual_tol") {
      cfg.residual_tol = positive_number(v, w);
    } else if (key == "estimator_tol") {
      cfg.estimator_tol = positive_number(v, w);
    } else if (key == "decay_tol") {
      cfg.decay_tol = positive_number(v, w);
    } else if (key == "horizon") {
      cfg.horizon = positive_int(v, w, 16);
    } else if (key == "exact_horizon") {
      cfg.exact_horizon = positive_int(v, w, 16);
    } else if (key == "samples") {
      cfg.samples = positive_int(v, w, 1);
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) invalid(w, "expected a non-negative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else {
      invalid(where, "unknown field '" + key + "'");
    }
  }
}

Json report_to_json(const MixingReport& r, const Json& input) {
  Json verdicts = {{"ergodic", to_string(r.ergodic)},
                   {"weakly_mixing", to_string(r.weakly_mixing)},
                   {"strictly_ergodic", to_string(r.strictly_ergodic)},
                   {"strictly_weak_mixing", to_string(r.strictly_weak_mixing)},
                   {"exact", to_string(r.exact)},
                   {"phi_ergodic_equiv", to_string(r.phi_ergodic_equiv)}};
  Json reasons = Json::object();
  const std::pair<const char*, const Verdict*> all[] = {
      {"ergodic", &r.ergodic},     {"weakly_mixing", &r.weakly_mixing},
      {"strictly_ergodic", &r.strictly_ergodic}, {"strictly_weak_mixing", &r.strictly_weak_mixing},
      {"exact", &r.exact},         {"phi_ergodic_equiv", &r.phi_ergodic_equiv}};
  for (const auto& [name, v] : all)
    if (!v->reason.empty()) reasons[name] = v->reason;

  Json clusters = Json::array();
  for (const EigenCluster& c : r.spectrum.clusters)
    clusters.push_back({{"value", complex_to_json(c.value)}, {"algebraic", c.algebraic}, {"geometric", c.geometric}});
  Json peripheral = Json::array();
  for (const EigenCluster& c : r.spectrum.peripheral) peripheral.push_back(complex_to_json(c.value));

  Json ergodic_w = {{"max_pair_residual", r.ergodic_detail.max_residual}};
  if (r.ergodic_detail.witness)
    ergodic_w["basis_pair"] = {{"x", r.ergodic_detail.witness->x_index},
                               {"y", r.ergodic_detail.witness->y_index},
                               {"residual", r.ergodic_detail.witness->residual}};
  Json obstruction = {{"clean", r.obstruction.clean}};
  if (!r.obstruction.clean) {
    obstruction["alpha"] = complex_to_json(r.obstruction.alpha);
    obstruction["residual"] = r.obstruction.residual;
    if (r.obstruction.h) obstruction["functional"] = state_to_json(*r.obstruction.h);
  }
  obstruction["peripheral_dual_eigenvalues"] = complex_list(r.obstruction.eigenvalues);

  Json witnesses = {
      {"spectrum",
       {{"eigenvalues", complex_list(r.spectrum.eigenvalues)},
        {"clusters", std::move(clusters)},
        {"peripheral", std::move(peripheral)},
        {"fixed_space_dim", r.spectrum.fixed_space_dim},
        {"spectral_radius", r.spectrum.spectral_radius}}},
      {"ergodic", std::move(ergodic_w)},
      {"weakly_mixing",
       {{"tensor_route", to_string(r.weak_detail.tensor_route)},
        {"tensor_residual", r.weak_detail.tensor_residual},
        {"peripheral_route", r.weak_detail.peripheral_route},
        {"peripheral_residual", r.weak_detail.peripheral_residual},
        {"density_zero_consistent", r.weak_detail.kvn_consistent}}},
      {"strictly_ergodic",
       {{"fixed_space_dim", r.strict_ergodic_detail.fixed_space_dim},
        {"defect_rank", r.strict_ergodic_detail.defect_rank},
        {"invariant_state_count", r.strict_ergodic_detail.invariant_state_count},
        {"state_distance", r.strict_ergodic_detail.state_distance}}},
      {"strictly_weak_mixing",
       {{"spectral_route", r.strict_weak_detail.spectral_route},
        {"tensor_route", to_string(r.strict_weak_detail.tensor_route)},
        {"tensor_fixed_space_dim", r.strict_weak_detail.tensor_fixed_space_dim}}},
      {"exact",
       {{"power_limit_converges", r.exact_detail.power_limit_converges},
        {"offending_eigenvalues", complex_list(r.exact_detail.offending)},
        {"limit_distance", r.exact_detail.limit_distance}}},
      {"phi_ergodic_equiv",
       {{"cesaro_of_norms", r.phi_detail.cesaro_of_norms},
        {"norm_limit", r.phi_detail.norm_limit},
        {"phi_ergodic", r.phi_detail.phi_ergodic},
        {"state_limit", r.phi_detail.state_limit},
        {"implications_hold", r.phi_detail.implications_hold}}},
      {"peripheral_obstruction", std::move(obstruction)}};

  Json traces = Json::array();
  auto append = [&](const std::string& check, const EstimatorResult& e) {
    for (auto& t : estimator_to_json(check, e)) traces.push_back(std::move(t));
  };
  append("ergodic", r.ergodic_detail.estimator);
  append("weakly_mixing", r.weak_detail.estimator);
  append("strictly_ergodic.norm", r.strict_ergodic_detail.norm_estimator);
  append("strictly_ergodic.state", r.strict_ergodic_detail.state_estimator);
  append("strictly_weak_mixing", r.strict_weak_detail.estimator);
  append("exact", r.exact_detail.estimator);
  append("phi_ergodic_equiv.cesaro_of_norms", r.phi_detail.cesaro_estimator);
  append("phi_ergodic_equiv.norm_limit", r.phi_detail.norm_estimator);
  append("phi_ergodic_equiv.state_limit", r.phi_detail.state_estimator);

  return {{"tool_version", kToolVersion},
          {"seed", r.config.seed},
          {"config", config_to_json(r.config)},
          {"verdicts", std::move(verdicts)},
          {"verdict_reasons", std::move(reasons)},
          {"consistent", r.consistent()},
          {"disagreements", r.disagreements},
          {"violations", r.violations},
          {"witnesses", std::move(witnesses)},
          {"traces", std::move(traces)},
          {"input", input}};
}

Json verification_to_json(const VerificationRecord& v) {
  Json trials = Json::array();
  for (const TrialRecord& t : v.records) {
    Json cond = Json::object();
    for (const auto& [k, val] : t.conditions) cond[k] = val;
    trials.push_back({{"trial", t.trial},
                      {"seed", t.seed},
                      {"family", t.family},
                      {"applicable", t.applicable},
                      {"holds", t.holds},
                      {"conditions", std::move(cond)},
                      {"detail", t.detail}});
  }
  return {{"tool_version", kToolVersion},
          {"theorem", theorem_name(v.theorem)},
          {"shape", v.shape.blocks()},
          {"trials", v.trials},
          {"seed", v.seed},
          {"config", config_to_json(v.config)},
          {"passed", v.passed},
          {"failed", v.failed},
          {"skipped", v.skipped},
          {"counterexample", counterexample_to_json(v.counterexample)},
          {"records", std::move(trials)}};
}

Json probe_to_json(const ProbeResult& p) {
  Json records = Json::array();
  int candidates = 0, errors = 0;
  for (const ProbeRecord& r : p.records) {
    candidates += r.candidate;
    errors += !r.error.empty();
    records.push_back({{"trial", r.trial},
                       {"seed", r.seed},
                       {"family", r.family},
                       {"weakly_mixing", r.weakly_mixing},
                       {"strictly_ergodic", r.strictly_ergodic},
                       {"strictly_weak_mixing", r.strictly_weak_mixing},
                       {"faithful_state", r.faithful_state},
                       {"candidate", r.candidate},
                       {"confirmed", r.confirmed},
                       {"error", r.error}});
  }
  return {{"tool_version", kToolVersion},
          {"question", "is every weakly mixing, strictly ergodic system strictly weak mixing?"},
          {"status", "empirical evidence, not a mathematical answer"},
          {"finding", p.counterexample ? "counterexample" : "no_counterexample"},
          {"shape", p.shape.blocks()},
          {"trials", p.trials},
          {"seed", p.seed},
          {"config", config_to_json(p.config)},
          {"candidates", candidates},
          {"rejected_candidates", p.rejected_candidates},
          {"errors", errors},
          {"counterexample", counterexample_to_json(p.counterexample)},
          {"records", std::move(records)}};
}

namespace {

// Arrays of scalars (including rows of [re, im] pairs) stay on one line.
bool is_flat(const Json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& e : j) {
    if (e.is_object()) return false;
    if (e.is_array() && !(e.size() == 2 && e[0].is_number() && e[1].is_number())) return false;
  }
  return true;
}

void pretty(std::ostream& out, const Json& j, int indent) {
  const std::string pad(indent + 2, ' ');
  if (is_flat(j)) {
    out << j.dump();
  } else if (j.is_array()) {
    out << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad;
      pretty(out, j[i], indent + 2);
      out << (i + 1 < j.size() ? ",\n" : "\n");
    }
    out << std::string(indent, ' ') << ']';
  } else if (j.empty()) {
    out << "{}";
  } else {
    out << "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out << pad << Json(key).dump() << ": ";
      pretty(out, value, indent + 2);
      out << (++i < j.size() ? ",\n" : "\n");
    }
    out << std::string(indent, ' ') << '}';
  }
}

}  // namespace

void write_json(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ValidationError, path + ": cannot write file");
  pretty(out, j, 0);
  out << '\n';
  if (!out) throw Error(ErrorKind::ValidationError, path + ": write failed");
}

}  // namespace cstar

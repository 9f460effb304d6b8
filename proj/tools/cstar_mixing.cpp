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

#include <iostream>

#include <CLI11.hpp>

#include "cstar/cli.hpp"
#include "cstar/io.hpp"

namespace {

void add_overrides(CLI::App* cmd, cstar::TolOverrides& o) {
  cmd->add_option("--tol-spectral", o.tol_spectral, "Peripheral and rank tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Estimator sampling seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classify finite-dimensional C*-dynamical systems by mixing property"};
  app.set_version_flag("--version", std::string(cstar::kToolVersion));
  app.require_subcommand(1);

  cstar::ClassifyOptions classify;
  auto* c = app.add_subcommand("classify", "Classify a system file and write a report");
  c->add_option("input", classify.input, "System file (JSON)")->required();
  c->add_option("--report", classify.report, "Report path");
  add_overrides(c, classify.overrides);

  cstar::VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Check a theorem on a seeded random ensemble");
  v->add_option("theorem", verify.theorem, "One of: " + [] {
    std::string s;
    for (const auto& n : cstar::theorem_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }())->required();
  v->add_option("--shape", verify.shape, "Block sizes, e.g. 1,1,2")->delimiter(',');
  v->add_option("--trials", verify.trials, "Ensemble size (default 200)")->check(CLI::PositiveNumber);
  v->add_option("--seed", verify.seed, "Base seed; trial i uses seed + i");
  v->add_option("--out", verify.out, "Verification record path");
  v->add_option("--threads", verify.threads, "Worker threads (default CSTAR_MIXING_THREADS or all cores)");

  cstar::ExampleOptions example;
  auto* e = app.add_subcommand("example", "Materialize a model system and classify it");
  e->add_option("name", example.name, "rank-one, rotation or markov-chain")
      ->required()
      ->check(CLI::IsMember({"rank-one", "rotation", "markov-chain"}));
  e->add_option("--d", example.d, "Dimension (rank-one, rotation)");
  e->add_option("--k", example.k, "Rotation step");
  e->add_option("--P", example.p, "Transition matrix p11,p12,p21,p22")->delimiter(',');
  e->add_option("--q", example.q, "Probability vector q1,q2")->delimiter(',');
  e->add_option("--L", example.length, "Chain length")->check(CLI::Range(2, 6));
  e->add_option("--out", example.out, "System file path");
  add_overrides(e, example.overrides);

  cstar::ProbeOptions probe;
  auto* p = app.add_subcommand("probe-swm-gap",
                               "Search for weakly mixing, strictly ergodic systems that are not strictly weak mixing");
  p->add_option("--shape", probe.shape, "Block sizes, e.g. 1,1,2")->delimiter(',');
  p->add_option("--trials", probe.trials, "Ensemble size (default 500)")->check(CLI::PositiveNumber);
  p->add_option("--seed", probe.seed, "Base seed; trial i uses seed + i");
  p->add_option("--out", probe.out, "Findings path");
  p->add_option("--threads", probe.threads, "Worker threads (default CSTAR_MIXING_THREADS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : cstar::kExitInput;
  }

  if (*c) return cstar::cmd_classify(classify, std::cout, std::cerr);
  if (*v) return cstar::cmd_verify(verify, std::cout, std::cerr);
  if (*e) return cstar::cmd_example(example, std::cout, std::cerr);
  return cstar::cmd_probe(probe, std::cout, std::cerr);
}

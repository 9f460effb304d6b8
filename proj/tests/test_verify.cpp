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

#include <doctest.h>

#include "cstar/error.hpp"
#include "cstar/models.hpp"
#include "cstar/verify.hpp"

using namespace cstar;

TEST_CASE("theorem names") {
  for (const std::string& n : theorem_names()) CHECK(theorem_name(theorem_from_name(n)) == n);
  try {
    theorem_from_name("nope");
    FAIL("expected UnknownTheorem");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownTheorem);
  }
}

TEST_CASE("ensemble members") {
  const AlgebraShape s({1, 2});
  const EnsembleMember m = ensemble_member(s, 10, 4);
  CHECK(m.seed == 14);
  CHECK(m.kraus_count == 2);
  CHECK(m.system.op().kraus().size() == 2);
  const EnsembleMember again = ensemble_member(s, 10, 4);
  CHECK((m.system.op().matrix().array() == again.system.op().matrix().array()).all());
}

TEST_CASE("instance checks on the rotation") {
  const RotationModel m = rotation_system(12, 5);
  const InstanceOutcome o = verify_instance(Theorem::StrictErgodicity, m.system);
  CHECK(o.holds);
  for (const auto& [name, value] : o.conditions) CHECK_MESSAGE(value == "true", name);

  CHECK(verify_instance(Theorem::PeripheralObstruction, m.system).holds);
  CHECK(verify_instance(Theorem::StrictWeakMixing, m.system).holds);
  CHECK(verify_instance(Theorem::WeakMixingTensor, m.system).holds);
  CHECK(verify_instance(Theorem::PhiErgodicity, m.system).holds);
}

TEST_CASE("verify_theorem is deterministic and thread-independent") {
  const AlgebraShape s({2});
  const VerificationRecord a = verify_theorem(Theorem::WeakMixingTensor, s, 30, 7, {}, 1);
  const VerificationRecord b = verify_theorem(Theorem::WeakMixingTensor, s, 30, 7, {}, 3);
  CHECK(a.passed == 30);
  CHECK(a.failed == 0);
  CHECK_FALSE(a.counterexample.has_value());
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].seed == b.records[i].seed);
    CHECK(a.records[i].holds == b.records[i].holds);
    CHECK(a.records[i].conditions == b.records[i].conditions);
  }
}

TEST_CASE("every theorem holds on a small ensemble") {
  for (const std::string& n : theorem_names()) {
    const VerificationRecord v = verify_theorem(theorem_from_name(n), AlgebraShape({1, 1, 2}), 20, 3);
    CHECK_MESSAGE(v.failed == 0, n);
    CHECK(v.passed + v.skipped == 20);
  }
}

TEST_CASE("gap probe") {
  const ProbeResult a = probe_swm_gap(AlgebraShape({2}), 30, 1, {}, 1);
  const ProbeResult b = probe_swm_gap(AlgebraShape({2}), 30, 1, {}, 2);
  CHECK_FALSE(a.counterexample.has_value());
  bool non_faithful = false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].family == b.records[i].family);
    CHECK(a.records[i].weakly_mixing == b.records[i].weakly_mixing);
    CHECK(a.records[i].strictly_weak_mixing == b.records[i].strictly_weak_mixing);
    CHECK(a.records[i].error.empty());
    non_faithful = non_faithful || !a.records[i].faithful_state;
  }
  CHECK(non_faithful);
}

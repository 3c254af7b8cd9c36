// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "support.hpp"
#include "unobstruct/agents.hpp"
#include "unobstruct/error.hpp"
#include "unobstruct/rewards.hpp"
#include "unobstruct/trace.hpp"

using namespace unobstruct;
using namespace unobstruct::testing;

namespace {

GraphRecord fixture_record() {
  const auto scene = fixture_scene();
  return make_graph_record(scene, build_relations(scene), 4);
}

SampleReport score(const std::string& text, const GraphRecord& record, const SceneRecord& scene,
                   Setting setting) {
  const auto p = resolve_prediction(parse_trace(text, setting), &scene);
  return evaluate_sample(p, ground_truth_of(record));
}

}  // namespace

TEST_CASE("oracle reproduces the synthesized answer") {
  const auto scene = fixture_scene();
  const auto record = fixture_record();
  CHECK(oracle_predict(record, nullptr, Setting::OracleSoM) == kFixtureSomAnswer);
  CHECK(oracle_predict(scene, 4, Setting::OracleSoM) == kFixtureSomAnswer);
  CHECK(oracle_predict(record, &scene, Setting::NLP) == synth_nlp(record, scene)->answer_text);
  CHECK_THROWS_AS(oracle_predict(record, nullptr, Setting::NLP), DomainError);
}

TEST_CASE("unobstructed oracle answer") {
  const auto scene = fixture_scene();
  const auto text = oracle_predict(scene, 2, Setting::OracleSoM);
  CHECK(text.find("<answer>[2]</answer>") != std::string::npos);
}

TEST_CASE("zero noise is the oracle") {
  const auto scene = fixture_scene();
  const auto record = fixture_record();
  NoiseSpec zero;
  zero.seed = 99;
  CHECK(zero.is_zero());
  for (Setting s : {Setting::OracleSoM, Setting::NLP}) {
    CHECK(corrupted_predict(record, scene, s, zero) == oracle_predict(record, &scene, s));
  }
}

TEST_CASE("single-knob corruption") {
  const auto scene = fixture_scene();
  const auto record = fixture_record();

  NoiseSpec drop_answer;
  drop_answer.p_drop_answer = 1.0;
  const auto a = score(corrupted_predict(record, scene, Setting::OracleSoM, drop_answer), record,
                       scene, Setting::OracleSoM);
  CHECK(a.sr.recall <= 0.5);
  CHECK(a.mp_ned == 0.0);

  NoiseSpec broken;
  broken.p_break_format = 1.0;
  const auto text = corrupted_predict(record, scene, Setting::OracleSoM, broken);
  CHECK(format_reward(text, Setting::OracleSoM) == 0);

  NoiseSpec drop_path;
  drop_path.p_drop_path = 1.0;
  const auto d = score(corrupted_predict(record, scene, Setting::NLP, drop_path), record, scene,
                       Setting::NLP);
  CHECK(d.format_ok);
  CHECK(d.mp_ned == 1.0);
  CHECK(d.sr.f1 == 1.0);
}

TEST_CASE("corruption is deterministic and coupled") {
  const auto scene = fixture_scene();
  const auto record = fixture_record();
  NoiseSpec n;
  n.seed = 5;
  n.p_swap = 0.5;
  n.p_drop_path = 0.3;
  const auto once = corrupted_predict(record, scene, Setting::OracleSoM, n);
  CHECK(once == corrupted_predict(record, scene, Setting::OracleSoM, n));
  NoiseSpec bad;
  bad.p_swap = 1.5;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

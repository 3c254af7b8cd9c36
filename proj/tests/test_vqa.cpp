// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "support.hpp"
#include "unobstruct/rewards.hpp"
#include "unobstruct/scene_gen.hpp"
#include "unobstruct/trace.hpp"
#include "unobstruct/vqa.hpp"

using namespace unobstruct;
using namespace unobstruct::testing;

namespace {

GraphRecord fixture_record() {
  const auto scene = fixture_scene();
  return make_graph_record(scene, build_relations(scene), 4);
}

std::string answer_block(const std::string& text) {
  const auto open = text.find("<answer>");
  const auto close = text.rfind("</answer>");
  return text.substr(open + 8, close - open - 8);
}

}  // namespace

TEST_CASE("set-of-mark fixture sample") {
  const auto s = synth_som(fixture_record());
  CHECK(s.answer_text == kFixtureSomAnswer);
  CHECK(s.image_ref == "Meta_reason_data/scene4616_3_labeled.png");
  CHECK(s.question == "<image>\nTo grasp object 4, which object is on top of it?");
  CHECK(s.system_prompt == kSomSystemPrompt);
  CHECK(s.sample_id == "data_ifl_46/scene4616/3/4/som");
}

TEST_CASE("natural-language fixture sample") {
  const auto scene = fixture_scene();
  const auto s = synth_nlp(fixture_record(), scene);
  REQUIRE(s.has_value());
  CHECK(answer_block(s->answer_text) == kFixtureNlpAnswerList);
  CHECK(s->image_ref == "Meta_reason_data_ori/scene4616_view3_ori.png");
  CHECK(s->question == "<image>\nTo grasp right sugar box, which object is on top of it?");
  CHECK(s->answer_text.rfind("<think>Path1: right sugar box at (640, 807) is obstructed by "
                             "bottom canned meat at (831, 677) with the occlusion ratio of 7%",
                             0) == 0);
}

TEST_CASE("unobstructed and chain samples") {
  const auto scene = box_scene(100, 100,
                               {{9, 0, 70, 70, 90, 90, "plate"},
                                {2, 1, 0, 0, 29, 29, "stapler"},
                                {4, 2, 20, 0, 49, 29, "book"},
                                {5, 3, 40, 0, 69, 29, "box"}});
  const auto rels = build_relations(scene);
  const auto free = make_graph_record(scene, rels, 9);
  const auto s = synth_som(free);
  CHECK(answer_block(s.answer_text) == "[9]");
  CHECK(s.answer_text.find("Object 9 is not obstructed") != std::string::npos);
  const auto n = synth_nlp(free, scene);
  REQUIRE(n.has_value());
  CHECK(answer_block(n->answer_text) == "[<points 80 80>plate</points>]");

  const auto chain = make_graph_record(scene, rels, 2);
  REQUIRE(chain.paths == std::vector<ObstructionPath>{{5, 4, 2}});
  const auto c = synth_som(chain);
  CHECK(answer_block(c.answer_text) == "[5]");
  CHECK(c.answer_text.find("Path1: Object 2 is obstructed by object 4") != std::string::npos);
  CHECK(c.answer_text.find("Object 4 is obstructed by object 5") != std::string::npos);
}

TEST_CASE("indescribable node skips the natural-language sample") {
  auto scene = fixture_scene();
  for (auto& o : scene.objects) {
    if (o.id == 3) o.name = std::string(kIndescribable);
  }
  const auto record = make_graph_record(scene, build_relations(scene), 4);
  CHECK_FALSE(synth_nlp(record, scene).has_value());
}

TEST_CASE("cue options") {
  SynthOptions o;
  o.contact_point = true;
  o.degree_word = true;
  const auto text = synth_som(fixture_record(), o).answer_text;
  CHECK(text.find("slightly") != std::string::npos);
  CHECK(check_format(text, Setting::OracleSoM));
  CHECK(parse_som(text).think_paths == std::vector<ObstructionPath>{{1, 4}, {3, 4}});
  SynthOptions bare;
  bare.ratio = false;
  CHECK(synth_som(fixture_record(), bare).answer_text.find('%') == std::string::npos);
  SynthOptions terse;
  terse.short_template = true;
  const auto t = synth_som(fixture_record(), terse).answer_text;
  CHECK(parse_som(t).think_paths == std::vector<ObstructionPath>{{1, 4}, {3, 4}});
}

TEST_CASE("record document round trip") {
  const auto scene = fixture_scene();
  const auto s = *synth_nlp(fixture_record(), scene);
  const auto back = vqa_from_json(vqa_to_json(s));
  CHECK(back.answer_text == s.answer_text);
  CHECK(back.setting == Setting::NLP);
  CHECK(back.gt.paths == s.gt.paths);
  CHECK(back.difficulty == Difficulty::Medium);
}

TEST_CASE("synthesized samples parse back to their ground truth") {
  GenConfig cfg;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    cfg.seed = seed;
    const auto scene = generate_scene(cfg);
    const auto rels = build_relations(scene);
    for (const auto& obj : scene.objects) {
      if (!eligible_target(obj)) continue;
      const auto record = make_graph_record(scene, rels, obj.id);
      const auto gt = ground_truth_of(record);
      const std::set<int> tops(record.top_objects.begin(), record.top_objects.end());

      const auto som = synth_som(record);
      CHECK(format_reward(som.answer_text, Setting::OracleSoM) == 1);
      const auto ps = resolve_prediction(parse_som(som.answer_text), nullptr);
      CHECK(std::set<int>(ps.answer.begin(), ps.answer.end()) == tops);
      CHECK(std::set<ObstructionPath>(ps.paths.begin(), ps.paths.end()) ==
            std::set<ObstructionPath>(gt.paths.begin(), gt.paths.end()));

      if (const auto nlp = synth_nlp(record, scene)) {
        CHECK(format_reward(nlp->answer_text, Setting::NLP) == 1);
        const auto pn = resolve_prediction(parse_nlp(nlp->answer_text), &scene);
        CHECK(std::set<int>(pn.answer.begin(), pn.answer.end()) == tops);
        CHECK(std::set<ObstructionPath>(pn.paths.begin(), pn.paths.end()) ==
              std::set<ObstructionPath>(gt.paths.begin(), gt.paths.end()));
      }
      ++checked;
    }
  }
  CHECK(checked > 500);
}

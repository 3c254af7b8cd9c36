// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "support.hpp"
#include "unobstruct/agents.hpp"
#include "unobstruct/dataset.hpp"
#include "unobstruct/error.hpp"
#include "unobstruct/scene_gen.hpp"

using namespace unobstruct;
using namespace unobstruct::testing;
namespace fs = std::filesystem;

namespace {

/// Writes generated scenes and their VQA records into a fresh directory.
fs::path make_dataset(const std::string& name, int scenes) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<json> records;
  GenConfig cfg;
  for (int s = 0; s < scenes; ++s) {
    cfg.seed = 500 + static_cast<std::uint64_t>(s);
    const auto scene = generate_scene(cfg);
    const std::string file = "scene" + std::to_string(s) + ".json";
    save_scene(dir / file, scene);
    const auto rels = build_relations(scene);
    for (const auto& o : scene.objects) {
      if (!eligible_target(o)) continue;
      auto record = make_graph_record(scene, rels, o.id);
      record.scene_path = file;
      records.push_back(vqa_to_json(synth_som(record)));
      if (auto n = synth_nlp(record, scene)) records.push_back(vqa_to_json(*n));
    }
  }
  write_jsonl(dir / "vqa.jsonl", records);
  return dir;
}

std::vector<PredictionRecord> oracle_predictions(const GroundTruthManifest& m) {
  std::vector<PredictionRecord> out;
  for (const auto& e : m.entries()) {
    out.push_back({e.sample_id, oracle_predict(e.gt, e.scene.get(), e.setting)});
  }
  return out;
}

}  // namespace

TEST_CASE("oracle predictions score perfectly") {
  const auto dir = make_dataset("unobstruct_dataset_a", 20);
  const auto manifest = GroundTruthManifest::load(dir / "vqa.jsonl");
  REQUIRE_FALSE(manifest.empty());
  const auto preds = oracle_predictions(manifest);
  EvalConfig cfg;
  const auto result = evaluate_dataset(preds, manifest, cfg);
  CHECK(result.samples.size() == manifest.entries().size());
  for (const auto& [d, s] : result.report.strata) {
    if (s.count == 0) continue;
    CHECK(s.sr_f1 == 1.0);
    CHECK(s.f1_rel == 1.0);
    CHECK(s.mp_ned == 0.0);
    CHECK(s.format_rate == 1.0);
  }
  for (const auto& r : reward_dataset(preds, manifest, cfg)) {
    CHECK(r.reward.r == cfg.rewards.lambda_fmt + cfg.rewards.lambda_task);
  }
}

TEST_CASE("parallel evaluation matches serial") {
  const auto dir = make_dataset("unobstruct_dataset_b", 10);
  const auto manifest = GroundTruthManifest::load(dir / "vqa.jsonl");
  auto preds = oracle_predictions(manifest);
  for (std::size_t i = 0; i < preds.size(); i += 3) preds[i].output += " trailing";
  EvalConfig serial, parallel;
  parallel.jobs = 4;
  const auto a = evaluate_dataset(preds, manifest, serial);
  const auto b = evaluate_dataset(preds, manifest, parallel);
  CHECK(report_to_json(a.report).dump() == report_to_json(b.report).dump());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(sample_report_to_json(a.samples[i]).dump() == sample_report_to_json(b.samples[i]).dump());
  }
}

TEST_CASE("manifest errors") {
  const auto dir = make_dataset("unobstruct_dataset_c", 2);
  const auto manifest = GroundTruthManifest::load(dir / "vqa.jsonl");
  EvalConfig cfg;
  CHECK_THROWS_AS(evaluate_dataset({}, manifest, cfg), ManifestError);

  auto preds = oracle_predictions(manifest);
  preds.push_back({"nowhere/0/1/som", "x"});
  try {
    evaluate_dataset(preds, manifest, cfg);
    FAIL("expected a manifest error");
  } catch (const ManifestError& e) {
    CHECK(std::string(e.what()).find("nowhere/0/1/som") != std::string::npos);
  }
  preds.pop_back();
  preds.push_back(preds.front());
  CHECK_THROWS_AS(reward_dataset(preds, manifest, cfg), ManifestError);
}

TEST_CASE("missing predictions count as format failures") {
  const auto dir = make_dataset("unobstruct_dataset_d", 2);
  const auto manifest = GroundTruthManifest::load(dir / "vqa.jsonl");
  auto preds = oracle_predictions(manifest);
  preds.pop_back();
  const auto result = evaluate_dataset(preds, manifest, {});
  CHECK(result.report.overall.format_rate < 1.0);
  CHECK_FALSE(result.samples.back().format_ok);
}

TEST_CASE("prediction files") {
  const auto path = fs::temp_directory_path() / "unobstruct_preds.jsonl";
  const std::vector<json> docs{prediction_to_json({"a/0/1/som", "<think></think>"})};
  write_jsonl(path, docs);
  const auto back = read_predictions(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].sample_id == "a/0/1/som");
  CHECK_THROWS_AS(read_predictions("/nonexistent/p.jsonl"), IoError);
  {
    std::ofstream out(path);
    out << "{\"sample_id\": 3}\n";
  }
  CHECK_THROWS_AS(read_predictions(path), SchemaError);
}

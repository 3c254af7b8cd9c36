// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/dataset.hpp"

#include <fstream>
#include <set>

#include "unobstruct/error.hpp"
#include "unobstruct/parallel.hpp"
#include "unobstruct/trace.hpp"

namespace unobstruct {

namespace {

std::map<std::string, const PredictionRecord*> index_predictions(
    std::span<const PredictionRecord> predictions, const GroundTruthManifest& manifest) {
  if (predictions.empty() && !manifest.empty()) {
    throw ManifestError("prediction set is empty but the manifest lists " +
                        std::to_string(manifest.entries().size()) + " samples");
  }
  std::map<std::string, const PredictionRecord*> by_id;
  std::vector<std::string> unknown, duplicate;
  for (const auto& p : predictions) {
    if (!manifest.find(p.sample_id)) {
      unknown.push_back(p.sample_id);
    } else if (!by_id.emplace(p.sample_id, &p).second) {
      duplicate.push_back(p.sample_id);
    }
  }
  auto listing = [](const std::vector<std::string>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size() && i < 20; ++i) out += (i ? ", " : "") + ids[i];
    if (ids.size() > 20) out += ", ... (" + std::to_string(ids.size()) + " total)";
    return out;
  };
  if (!unknown.empty()) throw ManifestError("sample ids not in the manifest: " + listing(unknown));
  if (!duplicate.empty()) throw ManifestError("duplicate prediction ids: " + listing(duplicate));
  return by_id;
}

}  // namespace

std::vector<json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<json> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw SchemaError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

void write_jsonl(const std::filesystem::path& path, std::span<const json> records) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& r : records) out << r.dump() << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path) {
  std::vector<PredictionRecord> out;
  for (const auto& doc : read_jsonl(path)) {
    try {
      out.push_back({doc.at("sample_id").get<std::string>(), doc.at("output").get<std::string>()});
    } catch (const json::exception& e) {
      throw SchemaError(path.string() + ": prediction record: " + e.what());
    }
  }
  return out;
}

json prediction_to_json(const PredictionRecord& record) {
  return {{"schema_version", kSchemaVersion},
          {"sample_id", record.sample_id},
          {"output", record.output}};
}

std::shared_ptr<const SceneRecord> SceneCache::get(const std::filesystem::path& path) {
  const auto key = path.lexically_normal().string();
  auto it = scenes_.find(key);
  if (it != scenes_.end()) return it->second;
  auto scene = std::make_shared<const SceneRecord>(load_scene(path));
  scenes_.emplace(key, scene);
  return scene;
}

GroundTruthManifest::GroundTruthManifest(std::vector<ManifestEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i].sample_id, i).second) {
      throw ManifestError("duplicate manifest sample id " + entries_[i].sample_id);
    }
  }
}

GroundTruthManifest GroundTruthManifest::load(const std::filesystem::path& vqa_path) {
  SceneCache scenes;
  std::vector<ManifestEntry> entries;
  const auto base = vqa_path.parent_path();
  for (const auto& doc : read_jsonl(vqa_path)) {
    VqaSample sample = vqa_from_json(doc);
    ManifestEntry entry{sample.sample_id, sample.setting, std::move(sample.gt), nullptr};
    if (entry.gt.scene_path.empty()) {
      if (entry.setting == Setting::NLP) {
        throw ManifestError("natural-language sample " + entry.sample_id + " has no scene_path");
      }
    } else {
      std::filesystem::path scene_path = entry.gt.scene_path;
      if (scene_path.is_relative()) scene_path = base / scene_path;
      entry.scene = scenes.get(scene_path);
    }
    entries.push_back(std::move(entry));
  }
  return GroundTruthManifest(std::move(entries));
}

const ManifestEntry* GroundTruthManifest::find(std::string_view sample_id) const {
  auto it = index_.find(sample_id);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

SampleReport evaluate_prediction(std::string_view output, const ManifestEntry& entry,
                                 const EvalConfig& config) {
  const ParsedTrace trace = parse_trace(output, entry.setting);
  const auto prediction = resolve_prediction(trace, entry.scene.get(), config.resolve_radius);
  return evaluate_sample(prediction, ground_truth_of(entry.gt), entry.sample_id);
}

DatasetEvaluation evaluate_dataset(std::span<const PredictionRecord> predictions,
                                   const GroundTruthManifest& manifest, const EvalConfig& config) {
  const auto by_id = index_predictions(predictions, manifest);
  const auto& entries = manifest.entries();
  DatasetEvaluation out;
  out.samples.resize(entries.size());
  parallel_for(entries.size(), config.jobs, [&](std::size_t i) {
    const auto& entry = entries[i];
    auto it = by_id.find(entry.sample_id);
    if (it == by_id.end()) {
      SampleReport missing;
      missing.sample_id = entry.sample_id;
      missing.difficulty = entry.gt.difficulty;
      out.samples[i] = std::move(missing);
    } else {
      out.samples[i] = evaluate_prediction(it->second->output, entry, config);
    }
  });
  out.report = aggregate(out.samples);
  return out;
}

json reward_record_to_json(const RewardRecord& record) {
  return {{"sample_id", record.sample_id},
          {"r_fmt", record.reward.r_fmt},
          {"r_task", record.reward.r_task},
          {"r", record.reward.r},
          {"r_path", record.reward.r_path}};
}

std::vector<RewardRecord> reward_dataset(std::span<const PredictionRecord> predictions,
                                         const GroundTruthManifest& manifest,
                                         const EvalConfig& config) {
  index_predictions(predictions, manifest);
  std::vector<RewardRecord> out(predictions.size());
  parallel_for(predictions.size(), config.jobs, [&](std::size_t i) {
    const auto& p = predictions[i];
    const auto* entry = manifest.find(p.sample_id);
    out[i] = {p.sample_id,
              score_reward(p.output, entry->setting, ground_truth_of(entry->gt), config.rewards,
                           entry->scene.get(), config.resolve_radius)};
  });
  return out;
}

}  // namespace unobstruct

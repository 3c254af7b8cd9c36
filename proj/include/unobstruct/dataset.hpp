// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unobstruct/config.hpp"
#include "unobstruct/metrics.hpp"
#include "unobstruct/rewards.hpp"
#include "unobstruct/scene.hpp"
#include "unobstruct/vqa.hpp"

namespace unobstruct {

/// One JSON document per line. Blank lines are skipped.
std::vector<json> read_jsonl(const std::filesystem::path& path);
void write_jsonl(const std::filesystem::path& path, std::span<const json> records);

struct PredictionRecord {
  std::string sample_id;
  std::string output;
};

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);
json prediction_to_json(const PredictionRecord& record);

/// Loads each scene file once; safe to share between threads after loading.
class SceneCache {
 public:
  std::shared_ptr<const SceneRecord> get(const std::filesystem::path& path);

 private:
  std::map<std::string, std::shared_ptr<const SceneRecord>> scenes_;
};

struct ManifestEntry {
  std::string sample_id;
  Setting setting = Setting::OracleSoM;
  GraphRecord gt;
  std::shared_ptr<const SceneRecord> scene;  // null when the record names no scene file
};

/// Ground truth keyed by sample id, immutable once built.
class GroundTruthManifest {
 public:
  GroundTruthManifest() = default;
  explicit GroundTruthManifest(std::vector<ManifestEntry> entries);

  /// Reads a VQA record file and the scenes it names. Relative scene paths
  /// resolve against the file's directory. Natural-language entries must
  /// name a scene.
  static GroundTruthManifest load(const std::filesystem::path& vqa_path);

  const ManifestEntry* find(std::string_view sample_id) const;
  const std::vector<ManifestEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<ManifestEntry> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Parse, resolve and score one prediction.
SampleReport evaluate_prediction(std::string_view output, const ManifestEntry& entry,
                                 const EvalConfig& config);

struct DatasetEvaluation {
  std::vector<SampleReport> samples;  // manifest order
  StratifiedReport report;
};

/// Throws ManifestError for prediction ids missing from the manifest, for
/// duplicate ids, and for an empty prediction set against a nonempty
/// manifest. Manifest samples without a prediction count as format failures.
DatasetEvaluation evaluate_dataset(std::span<const PredictionRecord> predictions,
                                   const GroundTruthManifest& manifest, const EvalConfig& config);

struct RewardRecord {
  std::string sample_id;
  RewardBreakdown reward;
};

json reward_record_to_json(const RewardRecord& record);

/// Rewards in prediction-file order. Same manifest checks as evaluation.
std::vector<RewardRecord> reward_dataset(std::span<const PredictionRecord> predictions,
                                         const GroundTruthManifest& manifest,
                                         const EvalConfig& config);

}  // namespace unobstruct

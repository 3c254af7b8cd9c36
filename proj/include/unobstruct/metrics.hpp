// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "unobstruct/graph.hpp"

namespace unobstruct {

struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static PrfScores from(double precision, double recall);
  friend bool operator==(const PrfScores&, const PrfScores&) = default;
};

/// Precision/recall/F1 of `pred` against `gt`; an empty side yields 0.
template <typename T>
PrfScores set_prf(const std::set<T>& pred, const std::set<T>& gt) {
  std::size_t hits = 0;
  for (const auto& x : pred) hits += gt.count(x);
  const double p = pred.empty() ? 0.0 : static_cast<double>(hits) / pred.size();
  const double r = gt.empty() ? 0.0 : static_cast<double>(hits) / gt.size();
  return PrfScores::from(p, r);
}

/// (obstructed, obstructor) pairs read off top-first paths.
std::set<Edge> triplets(std::span<const ObstructionPath> paths);

/// Token-level edit distance (unit insert/delete/substitute).
std::size_t levenshtein(std::span<const int> a, std::span<const int> b);

/// Edit distance over the longer length; 0 when both are empty.
double ned(std::span<const int> a, std::span<const int> b);

/// Rectangular cost matrix, row-major.
class CostMatrix {
 public:
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (row, col), ascending rows
  double cost = 0.0;
};

/// Minimum-cost matching covering min(rows, cols) lines (Kuhn-Munkres with
/// potentials, O(n^3)). Entries must be finite and nonnegative.
Assignment hungarian(const CostMatrix& cost);

/// Cost charged for a path matched against a dummy.
inline constexpr double kDummyPathCost = 1.0;

/// Mean matched NED between two path sets after padding the smaller side
/// with unit-cost dummies. 0 when both are empty.
double mp_ned(std::span<const ObstructionPath> pred, std::span<const ObstructionPath> gt);

/// Ground truth a prediction is scored against.
struct GroundTruth {
  int target = 0;
  std::vector<int> top_objects;
  std::vector<ObstructionPath> paths;
  Difficulty difficulty = Difficulty::NoOcc;
};

GroundTruth ground_truth_of(const GraphRecord& record);

/// Prediction already resolved to object ids. Unresolved natural-language
/// mentions carry negative placeholder ids that match nothing.
struct ResolvedPrediction {
  bool format_ok = false;
  std::vector<int> answer;
  std::vector<ObstructionPath> paths;
};

struct SampleReport {
  std::string sample_id;
  Difficulty difficulty = Difficulty::NoOcc;
  PrfScores sr;
  PrfScores triplet;
  double mp_ned = 1.0;
  bool format_ok = false;
};

SampleReport evaluate_sample(const ResolvedPrediction& prediction, const GroundTruth& gt,
                             std::string sample_id = {});

struct StratumMeans {
  std::size_t count = 0;
  double sr_p = 0, sr_r = 0, sr_f1 = 0;
  double op = 0, orr = 0, f1_rel = 0;
  double mp_ned = 0;
  double format_rate = 0;
};

struct StratifiedReport {
  std::map<Difficulty, StratumMeans> strata;  // every difficulty present, possibly empty
  StratumMeans overall;
};

StratifiedReport aggregate(std::span<const SampleReport> samples);

json report_to_json(const StratifiedReport& report);
StratifiedReport report_from_json(const json& doc);
/// Aligned plain-text table, one row per stratum plus Overall.
std::string report_table(const StratifiedReport& report);

json sample_report_to_json(const SampleReport& report);

}  // namespace unobstruct

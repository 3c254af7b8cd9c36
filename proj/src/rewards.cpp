// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/rewards.hpp"

#include <numeric>

#include "unobstruct/error.hpp"

namespace unobstruct {

void RewardConfig::validate() const {
  if (!(lambda_fmt >= 0.0) || !(lambda_task >= 0.0)) {
    throw DomainError("reward weights must be nonnegative");
  }
  if (lambda_fmt == 0.0 && lambda_task == 0.0) {
    throw DomainError("reward weights must not both be zero");
  }
}

int format_reward(std::string_view text, Setting setting) {
  return check_format(text, setting) ? 1 : 0;
}

double task_reward(const std::set<int>& pred, const std::set<int>& gt) {
  if (gt.empty()) throw DomainError("task reward needs a nonempty ground-truth set");
  std::size_t inter = 0;
  for (int id : pred) inter += gt.count(id);
  const std::size_t uni = pred.size() + gt.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::set<int> reward_target_set(const GroundTruth& gt) {
  if (gt.paths.empty()) return {gt.target};
  return {gt.top_objects.begin(), gt.top_objects.end()};
}

RewardBreakdown score_reward(std::string_view text, Setting setting, const GroundTruth& gt,
                             const RewardConfig& config, const SceneRecord* scene,
                             double resolve_radius) {
  config.validate();
  RewardBreakdown out;
  const ParsedTrace trace = parse_trace(text, setting);
  out.r_fmt = trace.format_ok ? 1 : 0;
  if (trace.format_ok) {
    const auto prediction = resolve_prediction(trace, scene, resolve_radius);
    out.r_task = task_reward({prediction.answer.begin(), prediction.answer.end()},
                             reward_target_set(gt));
    out.r_path = 1.0 - evaluate_sample(prediction, gt).mp_ned;
  }
  out.r = config.lambda_fmt * out.r_fmt + config.lambda_task * out.r_task;
  return out;
}

double combined_reward(std::string_view text, Setting setting, const GroundTruth& gt,
                       const RewardConfig& config, const SceneRecord* scene,
                       double resolve_radius) {
  return score_reward(text, setting, gt, config, scene, resolve_radius).r;
}

GroupRewards group_advantages(std::span<const double> rewards) {
  if (rewards.empty()) throw DomainError("advantages need a nonempty group");
  GroupRewards out;
  out.values.assign(rewards.begin(), rewards.end());
  const double mean =
      std::accumulate(rewards.begin(), rewards.end(), 0.0) / static_cast<double>(rewards.size());
  out.advantages.reserve(rewards.size());
  for (double r : rewards) out.advantages.push_back(r - mean);
  return out;
}

}  // namespace unobstruct

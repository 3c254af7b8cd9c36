// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unobstruct/metrics.hpp"
#include "unobstruct/scene.hpp"
#include "unobstruct/setting.hpp"
#include "unobstruct/trace.hpp"

namespace unobstruct {

struct RewardConfig {
  double lambda_fmt = 0.1;
  double lambda_task = 0.9;

  void validate() const;  // throws DomainError
};

/// 1 when the trace is well formed, else 0.
int format_reward(std::string_view text, Setting setting);

/// Set IoU. Throws DomainError for an empty ground truth.
double task_reward(const std::set<int>& pred, const std::set<int>& gt);

/// The answer set a prediction is rewarded against: the top-level
/// obstructors, or {target} when unobstructed.
std::set<int> reward_target_set(const GroundTruth& gt);

struct RewardBreakdown {
  int r_fmt = 0;
  double r_task = 0.0;
  double r = 0.0;
  double r_path = 0.0;  // 1 - MP_NED, reported only
};

/// lambda_fmt * r_fmt + lambda_task * r_task. The task term is 0 when the
/// format check fails. Natural-language traces need `scene` for resolution.
RewardBreakdown score_reward(std::string_view text, Setting setting, const GroundTruth& gt,
                             const RewardConfig& config, const SceneRecord* scene = nullptr,
                             double resolve_radius = kDefaultResolveRadius);

double combined_reward(std::string_view text, Setting setting, const GroundTruth& gt,
                       const RewardConfig& config, const SceneRecord* scene = nullptr,
                       double resolve_radius = kDefaultResolveRadius);

struct GroupRewards {
  std::vector<double> values;
  std::vector<double> advantages;
};

/// Each reward minus the group mean. Throws DomainError on an empty group.
GroupRewards group_advantages(std::span<const double> rewards);

}  // namespace unobstruct

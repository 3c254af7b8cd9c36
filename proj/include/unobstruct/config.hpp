// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>

#include "unobstruct/graph.hpp"
#include "unobstruct/occlusion.hpp"
#include "unobstruct/rewards.hpp"
#include "unobstruct/trace.hpp"

namespace unobstruct {

/// Tunables shared by every command. Each field has a default; a config file
/// may set any subset of them:
///
///   {"occlusion": {"min_ratio": 0.01, "max_ratio": 0.95,
///                  "obstructor_area": "modal",
///                  "degrees": {"partially": 0.25, "mostly": 0.5, "heavily": 0.75}},
///    "resolve_radius": 50,
///    "rewards": {"lambda_fmt": 0.1, "lambda_task": 0.9},
///    "path_cap": 64,
///    "jobs": 1}
struct EvalConfig {
  OcclusionConfig occlusion;
  double resolve_radius = kDefaultResolveRadius;
  RewardConfig rewards;
  std::size_t path_cap = kDefaultPathCap;
  int jobs = 1;
};

EvalConfig config_from_json(const json& doc, EvalConfig base = {});
EvalConfig load_config(const std::filesystem::path& path, EvalConfig base = {});

/// Environment variable naming the default config file.
inline constexpr const char* kConfigEnvVar = "UNOBSTRUCT_CONFIG";

/// Defaults, overlaid with the file named by UNOBSTRUCT_CONFIG when set.
EvalConfig default_config();

}  // namespace unobstruct

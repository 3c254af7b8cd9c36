// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "unobstruct/graph.hpp"
#include "unobstruct/occlusion.hpp"
#include "unobstruct/scene.hpp"

namespace unobstruct {

enum class ShapeFamily { Rectangles, ConvexPolygons };

std::vector<std::string> default_name_pool();

struct GenConfig {
  std::uint64_t seed = 0;
  int min_objects = 4;
  int max_objects = 12;
  int width = 640;
  int height = 480;
  ShapeFamily shapes = ShapeFamily::Rectangles;
  /// 0 places every object clear of the others; larger values stack more.
  double overlap_bias = 1.5;
  std::vector<std::string> name_pool = default_name_pool();
  int max_retries = 200;
  std::string scene_prefix = "gen";
  /// Objects showing less than this share of their area are named as
  /// indescribable.
  double min_describable_visibility = 0.10;

  void validate() const;  // throws DomainError
};

/// Deterministic in cfg (including the seed). Throws GenerationError when an
/// object cannot be placed within the retry budget.
SceneRecord generate_scene(const GenConfig& cfg);

/// Whether an object may serve as a query target: at most `max_ratio` of it
/// is hidden.
bool eligible_target(const ObjectInstance& object, const OcclusionConfig& occlusion = {});

struct SuiteEntry {
  SceneRecord scene;
  int target = 0;
  Difficulty difficulty = Difficulty::NoOcc;
};

/// Rejection-samples scenes (seeds cfg.seed, cfg.seed + 1, ...) until each
/// difficulty holds the requested number of targets. Throws GenerationError
/// naming the first bucket left short after `max_scenes` scenes.
std::vector<SuiteEntry> generate_suite(const GenConfig& cfg, const std::map<Difficulty, int>& counts,
                                       const OcclusionConfig& occlusion = {}, int max_scenes = 20000);

}  // namespace unobstruct

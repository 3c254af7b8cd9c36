// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "unobstruct/graph.hpp"
#include "unobstruct/scene.hpp"
#include "unobstruct/setting.hpp"
#include "unobstruct/vqa.hpp"

namespace unobstruct {

/// Corruption applied to the ground truth before rendering.
struct NoiseSpec {
  std::uint64_t seed = 0;
  double p_drop_path = 0.0;     // each path omitted from <think>
  double p_drop_answer = 0.0;   // each answer id omitted
  double p_swap = 0.0;          // each non-target id replaced by another scene id
  double p_break_format = 0.0;  // closing </answer> removed

  void validate() const;  // throws DomainError
  bool is_zero() const;
};

/// Ground truth rendered verbatim; identical to the synthesized answer text.
/// `scene` may be null in the set-of-mark setting.
std::string oracle_predict(const GraphRecord& record, const SceneRecord* scene, Setting setting,
                           const SynthOptions& options = {});
std::string oracle_predict(const SceneRecord& scene, int target, Setting setting,
                           const OcclusionConfig& occlusion = {}, const SynthOptions& options = {});

/// Deterministic in (noise.seed, sample id). Every random draw happens
/// whatever the probabilities are, so a larger probability corrupts a
/// superset of what a smaller one does, and all-zero noise reproduces the
/// oracle byte for byte.
std::string corrupted_predict(const GraphRecord& record, const SceneRecord& scene, Setting setting,
                              const NoiseSpec& noise, const SynthOptions& options = {});

}  // namespace unobstruct

// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unobstruct/graph.hpp"
#include "unobstruct/scene.hpp"
#include "unobstruct/setting.hpp"

namespace unobstruct {

inline constexpr std::string_view kSomSystemPrompt =
    "You are an assistant for robotic grasp planning. When asked which object must be removed "
    "first to grasp a specific object:\n"
    "- If the target object is not obstructed, return the target object's ID itself.\n"
    "- If there is one obstruction path, reason step-by-step along that path, include occlusion "
    "ratios when available, and end with the top-most object.\n"
    "- If multiple obstruction paths exist, reason step-by-step for each path separately.\n"
    "- In the <answer>...</answer> tag, output ALL distinct top-most objects as a JSON list.\n"
    "Use <think>...</think> for reasoning, and put ONLY final object IDs inside "
    "<answer>...</answer>.";

inline constexpr std::string_view kNlpSystemPrompt =
    "You are an assistant specialized in robotic grasp planning based on obstruction reasoning.\n"
    "When asked which object must be removed first to grasp a specific target object in a single "
    "image:\n"
    "- If the target object is not obstructed, return the target object's name/description and "
    "its coordinates.\n"
    "- If the object has one obstruction path, reason step-by-step along that path, include the "
    "occlusion ratio for each obstruction relation when available, and end with the top-most "
    "object. Each reasoning step must reference explicit (x,y) coordinates.\n"
    "- If the object has multiple obstruction paths, reason step-by-step for each path "
    "separately, and include ALL distinct top-most occluding objects in the final answer.\n"
    "- All reasoning must be enclosed inside a single pair of <think>...</think>.\n"
    "- The final answer must be enclosed in <answer>...</answer> and must follow the format:\n"
    "  <answer>[<points x y>object name</points>, ...]</answer>";

/// Obstruction cues rendered into each reasoning step.
struct SynthOptions {
  bool ratio = true;
  bool contact_point = false;
  bool degree_word = false;
  bool short_template = false;
  DegreeThresholds degrees;
  std::string som_image_root = "Meta_reason_data";
  std::string nlp_image_root = "Meta_reason_data_ori";
};

/// Structured content of one trace before rendering: paths top-first and
/// the answer ids in output order.
struct TraceContent {
  int target = 0;
  std::vector<ObstructionPath> paths;
  std::vector<int> answer;
};

/// Ground-truth content. Set-of-mark answers are ascending; natural-language
/// paths are ordered by the ratio of their target-adjacent relation
/// (largest first) and the answer lists path heads in that order.
TraceContent ground_truth_content(const GraphRecord& record, Setting setting);

/// Render a trace. Relations missing from `record.relations` are rendered
/// without cues. Natural-language rendering needs the scene for names and
/// centroids.
std::string render_som(const TraceContent& content, const GraphRecord& record,
                       const SynthOptions& options = {});
std::string render_nlp(const TraceContent& content, const GraphRecord& record,
                       const SceneRecord& scene, const SynthOptions& options = {});

struct VqaSample {
  std::string sample_id;
  Setting setting = Setting::OracleSoM;
  std::string image_ref;
  std::string system_prompt;
  std::string question;
  std::string answer_text;
  Difficulty difficulty = Difficulty::NoOcc;
  GraphRecord gt;
};

/// "<scene_id>/<view_id>/<target>/<setting>"
std::string sample_id_for(const GraphRecord& record, Setting setting);

VqaSample synth_som(const GraphRecord& record, const SynthOptions& options = {});

/// Empty when any node of the graph is an indescribable object.
std::optional<VqaSample> synth_nlp(const GraphRecord& record, const SceneRecord& scene,
                                   const SynthOptions& options = {});

json vqa_to_json(const VqaSample& sample);
VqaSample vqa_from_json(const json& doc);

}  // namespace unobstruct

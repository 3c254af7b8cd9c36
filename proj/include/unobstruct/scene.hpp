// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "unobstruct/mask.hpp"

namespace unobstruct {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Name given to objects annotators could not describe. Samples whose graph
/// touches such an object are excluded from natural-language synthesis.
inline constexpr std::string_view kIndescribable = "indescribable object";

struct ObjectInstance {
  int id = 0;  // set-of-mark label
  std::string name;
  Point centroid;  // label point; generated scenes keep it on the visible part
  int z_rank = 0;  // larger is nearer the camera
  Mask amodal;
  Mask modal;

  bool describable() const { return name != kIndescribable; }
  friend bool operator==(const ObjectInstance&, const ObjectInstance&) = default;
};

struct SceneRecord {
  std::string scene_id;
  std::string view_id;
  int width = 0;
  int height = 0;
  std::vector<ObjectInstance> objects;

  /// nullptr when absent.
  const ObjectInstance* find(int id) const;
  const ObjectInstance& at(int id) const;  // throws LookupError
  std::set<int> ids() const;

  friend bool operator==(const SceneRecord&, const SceneRecord&) = default;
};

/// Free-form instruction carried with its ground-truth resolution.
struct InstructionQuery {
  std::string text;
  int target_id = 0;
};

/// Throws ValidationError naming the first violated invariant.
void validate_scene(const SceneRecord& scene);
void validate_query(const InstructionQuery& query, const SceneRecord& scene);

/// Throws SchemaError for missing or mistyped fields, ValidationError for
/// invariant violations.
SceneRecord scene_from_json(const json& doc);
json scene_to_json(const SceneRecord& scene);

SceneRecord load_scene(const std::filesystem::path& path);
void save_scene(const std::filesystem::path& path, const SceneRecord& scene);

struct NormalizedScene {
  SceneRecord scene;
  std::map<int, int> remap;  // old id -> new id, one entry per object

  /// False iff every entry of the remap is the identity.
  bool changed() const;
};

/// Renumber ids to 1..N in ascending order of the original ids. Object order,
/// z-ranks and masks are untouched.
NormalizedScene normalize_ids(const SceneRecord& scene);

/// Centroid of the amodal mask, rounded half away from zero.
Point amodal_centroid(const Mask& amodal);

}  // namespace unobstruct

// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/scene.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "unobstruct/error.hpp"

namespace unobstruct {

namespace {

template <typename T>
T required(const json& doc, std::string_view field, std::string_view where) {
  const std::string key(field);
  if (!doc.is_object() || !doc.contains(key)) {
    throw SchemaError(std::string(where) + ": missing field '" + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string(where) + ": field '" + key + "' has the wrong type");
  }
}

Mask mask_from_json(const json& doc, std::string_view field, int w, int h, std::string_view where) {
  const auto runs = required<std::vector<std::uint32_t>>(doc, field, where);
  try {
    return Mask::from_rle(w, h, runs);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(where) + ": field '" + std::string(field) + "': " + e.what());
  }
}

}  // namespace

const ObjectInstance* SceneRecord::find(int id) const {
  auto it = std::find_if(objects.begin(), objects.end(), [id](const auto& o) { return o.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

const ObjectInstance& SceneRecord::at(int id) const {
  if (const auto* o = find(id)) return *o;
  throw LookupError("object " + std::to_string(id) + " not in scene " + scene_id);
}

std::set<int> SceneRecord::ids() const {
  std::set<int> out;
  for (const auto& o : objects) out.insert(o.id);
  return out;
}

void validate_scene(const SceneRecord& scene) {
  const std::string where = "scene '" + scene.scene_id + "'";
  if (scene.width <= 0 || scene.height <= 0) {
    throw ValidationError(where + ": image dimensions must be positive");
  }
  if (scene.objects.empty()) throw ValidationError(where + ": scene has no objects");
  std::set<int> ids, ranks;
  for (const auto& o : scene.objects) {
    const std::string obj = where + ", object " + std::to_string(o.id);
    if (o.id <= 0) throw ValidationError(obj + ": id must be positive");
    if (!ids.insert(o.id).second) throw ValidationError(obj + ": duplicate id");
    if (!ranks.insert(o.z_rank).second) {
      throw ValidationError(obj + ": duplicate z_rank " + std::to_string(o.z_rank));
    }
    if (o.centroid.x < 0 || o.centroid.y < 0 || o.centroid.x >= scene.width ||
        o.centroid.y >= scene.height) {
      throw ValidationError(obj + ": centroid outside image bounds");
    }
    for (const Mask* m : {&o.amodal, &o.modal}) {
      if (m->width() != scene.width || m->height() != scene.height) {
        throw ValidationError(obj + ": mask dimensions differ from image dimensions");
      }
    }
    if (!o.modal.is_subset_of(o.amodal)) {
      throw ValidationError(obj + ": modal mask is not a subset of the amodal mask");
    }
  }
}

void validate_query(const InstructionQuery& query, const SceneRecord& scene) {
  if (!scene.find(query.target_id)) {
    throw ValidationError("instruction target " + std::to_string(query.target_id) +
                          " not in scene " + scene.scene_id);
  }
}

SceneRecord scene_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("scene document is not an object");
  SceneRecord scene;
  scene.scene_id = required<std::string>(doc, "scene_id", "scene");
  const std::string where = "scene '" + scene.scene_id + "'";
  scene.view_id = required<std::string>(doc, "view_id", where);
  scene.width = required<int>(doc, "width", where);
  scene.height = required<int>(doc, "height", where);
  if (scene.width <= 0 || scene.height <= 0) {
    throw ValidationError(where + ": image dimensions must be positive");
  }
  if (doc.contains("schema_version") && doc["schema_version"] != kSchemaVersion) {
    throw SchemaError(where + ": unsupported schema_version " + doc["schema_version"].dump());
  }
  const auto objects = required<json>(doc, "objects", where);
  if (!objects.is_array()) throw SchemaError(where + ": field 'objects' must be an array");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const json& o = objects[i];
    const std::string obj = where + ", objects[" + std::to_string(i) + "]";
    const auto centroid = required<std::vector<int>>(o, "centroid", obj);
    if (centroid.size() != 2) throw SchemaError(obj + ": field 'centroid' must be [x, y]");
    scene.objects.push_back(ObjectInstance{
        .id = required<int>(o, "id", obj),
        .name = required<std::string>(o, "name", obj),
        .centroid = {centroid[0], centroid[1]},
        .z_rank = required<int>(o, "z_rank", obj),
        .amodal = mask_from_json(o, "amodal", scene.width, scene.height, obj),
        .modal = mask_from_json(o, "modal", scene.width, scene.height, obj),
    });
  }
  validate_scene(scene);
  return scene;
}

json scene_to_json(const SceneRecord& scene) {
  json objects = json::array();
  for (const auto& o : scene.objects) {
    objects.push_back({{"id", o.id},
                       {"name", o.name},
                       {"centroid", {o.centroid.x, o.centroid.y}},
                       {"z_rank", o.z_rank},
                       {"amodal", o.amodal.to_rle()},
                       {"modal", o.modal.to_rle()}});
  }
  return {{"schema_version", kSchemaVersion},
          {"scene_id", scene.scene_id},
          {"view_id", scene.view_id},
          {"width", scene.width},
          {"height", scene.height},
          {"objects", std::move(objects)}};
}

SceneRecord load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  return scene_from_json(doc);
}

void save_scene(const std::filesystem::path& path, const SceneRecord& scene) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scene file " + path.string());
  out << scene_to_json(scene).dump() << '\n';
}

bool NormalizedScene::changed() const {
  return std::any_of(remap.begin(), remap.end(), [](const auto& kv) { return kv.first != kv.second; });
}

NormalizedScene normalize_ids(const SceneRecord& scene) {
  NormalizedScene out{scene, {}};
  std::vector<int> ids;
  for (const auto& o : scene.objects) ids.push_back(o.id);
  std::sort(ids.begin(), ids.end());
  for (std::size_t i = 0; i < ids.size(); ++i) out.remap[ids[i]] = static_cast<int>(i) + 1;
  for (auto& o : out.scene.objects) o.id = out.remap.at(o.id);
  return out;
}

Point amodal_centroid(const Mask& amodal) {
  const auto mean = amodal.mean_position();
  if (!mean) return {};
  return {static_cast<int>(round_half_away(mean->first)),
          static_cast<int>(round_half_away(mean->second))};
}

}  // namespace unobstruct

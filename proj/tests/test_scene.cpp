// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>

#include "doctest.h"
#include "support.hpp"
#include "unobstruct/error.hpp"
#include "unobstruct/scene.hpp"

using namespace unobstruct;
using namespace unobstruct::testing;

TEST_CASE("one-object scene loads") {
  const auto scene = box_scene(8, 8, {{1, 0, 1, 1, 3, 3, "cup"}});
  const auto loaded = scene_from_json(scene_to_json(scene));
  CHECK(loaded.objects.size() == 1);
  CHECK(loaded == scene);
}

TEST_CASE("duplicate ids rejected") {
  auto doc = scene_to_json(box_scene(8, 8, {{1, 0, 0, 0, 2, 2}, {2, 1, 4, 4, 6, 6}}));
  doc["objects"][1]["id"] = 1;
  CHECK_THROWS_AS(scene_from_json(doc), ValidationError);
}

TEST_CASE("invariant violations are named") {
  auto scene = box_scene(8, 8, {{1, 0, 0, 0, 2, 2}, {2, 1, 4, 4, 6, 6}});
  SUBCASE("shared z rank") {
    scene.objects[1].z_rank = 0;
    CHECK_THROWS_AS(validate_scene(scene), ValidationError);
  }
  SUBCASE("modal outside amodal") {
    scene.objects[0].modal.set(7, 7);
    CHECK_THROWS_AS(validate_scene(scene), ValidationError);
  }
  SUBCASE("centroid out of bounds") {
    scene.objects[0].centroid = {8, 0};
    CHECK_THROWS_AS(validate_scene(scene), ValidationError);
  }
  SUBCASE("no objects") {
    scene.objects.clear();
    CHECK_THROWS_AS(validate_scene(scene), ValidationError);
  }
}

TEST_CASE("missing field is a schema error") {
  auto doc = scene_to_json(box_scene(8, 8, {{1, 0, 0, 0, 2, 2}}));
  doc["objects"][0].erase("modal");
  CHECK_THROWS_AS(scene_from_json(doc), SchemaError);
  CHECK_THROWS_AS(load_scene("/nonexistent/scene.json"), IoError);
}

TEST_CASE("fixture scene") {
  const auto scene = fixture_scene();
  CHECK(scene.scene_id == "data_ifl_46/scene4616");
  CHECK(scene.view_id == "3");
  for (int id : {1, 3, 4}) CHECK(scene.find(id) != nullptr);
  CHECK(scene.at(4).name == "right sugar box");
  CHECK(scene.at(4).centroid == Point{640, 807});
  CHECK(scene.at(1).centroid == Point{383, 585});
  CHECK(scene.at(3).centroid == Point{831, 677});
  CHECK(amodal_centroid(scene.at(3).amodal) == Point{831, 677});
  CHECK_THROWS_AS(scene.at(99), LookupError);
}

TEST_CASE("save and load round trip") {
  const auto scene = fixture_scene();
  const auto path = std::filesystem::temp_directory_path() / "unobstruct_scene_roundtrip.json";
  save_scene(path, scene);
  CHECK(load_scene(path) == scene);
  std::filesystem::remove(path);
}

TEST_CASE("normalize ids") {
  const auto scene = box_scene(10, 10, {{5, 0, 0, 0, 2, 2}, {2, 1, 3, 3, 5, 5}, {9, 2, 6, 6, 8, 8}});
  const auto n = normalize_ids(scene);
  CHECK(n.remap == std::map<int, int>{{2, 1}, {5, 2}, {9, 3}});
  CHECK(n.changed());
  CHECK(n.scene.ids() == std::set<int>{1, 2, 3});
  CHECK(n.scene.objects[0].id == 2);  // object order kept
  CHECK(n.scene.objects[0].z_rank == 0);

  const auto twice = normalize_ids(n.scene);
  CHECK(twice.scene == n.scene);
  CHECK_FALSE(twice.changed());
  CHECK(twice.remap == std::map<int, int>{{1, 1}, {2, 2}, {3, 3}});
}

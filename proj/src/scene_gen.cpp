// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/scene_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "unobstruct/error.hpp"

namespace unobstruct {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Inclusive range.
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

struct Box {
  int x0, y0, x1, y1;  // inclusive
};

Mask rasterize(const Box& box, ShapeFamily family, Rng& rng, int width, int height) {
  Mask mask(width, height);
  if (family == ShapeFamily::Rectangles) {
    mask.fill_rect(box.x0, box.y0, box.x1, box.y1);
    return mask;
  }
  // Convex hull of points on a jittered ellipse inscribed in the box.
  const double cx = (box.x0 + box.x1) / 2.0, cy = (box.y0 + box.y1) / 2.0;
  const double rx = (box.x1 - box.x0) / 2.0, ry = (box.y1 - box.y0) / 2.0;
  const int k = rng.integer(5, 8);
  std::vector<std::pair<double, double>> v;
  for (int i = 0; i < k; ++i) {
    const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double s = rng.uniform(0.8, 1.0);
    v.emplace_back(cx + s * rx * std::cos(a), cy + s * ry * std::sin(a));
  }
  std::sort(v.begin(), v.end());
  auto cross = [](auto o, auto a, auto b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<double, double>> hull(2 * v.size());
  std::size_t n = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    while (n >= 2 && cross(hull[n - 2], hull[n - 1], v[i]) <= 0) --n;
    hull[n++] = v[i];
  }
  for (std::size_t i = v.size() - 1, t = n + 1; i-- > 0;) {
    while (n >= t && cross(hull[n - 2], hull[n - 1], v[i]) <= 0) --n;
    hull[n++] = v[i];
  }
  hull.resize(n - 1);
  for (int y = box.y0; y <= box.y1; ++y) {
    for (int x = box.x0; x <= box.x1; ++x) {
      bool inside = hull.size() >= 3;
      for (std::size_t i = 0; inside && i < hull.size(); ++i) {
        if (cross(hull[i], hull[(i + 1) % hull.size()], std::pair<double, double>(x, y)) < 0) {
          inside = false;
        }
      }
      if (inside) mask.set(x, y);
    }
  }
  if (mask.none()) mask.set(static_cast<int>(cx), static_cast<int>(cy));
  return mask;
}

Box box_around(double cx, double cy, int w, int h, int width, int height) {
  int x0 = static_cast<int>(std::lround(cx - w / 2.0));
  int y0 = static_cast<int>(std::lround(cy - h / 2.0));
  x0 = std::clamp(x0, 0, width - w);
  y0 = std::clamp(y0, 0, height - h);
  return {x0, y0, x0 + w - 1, y0 + h - 1};
}

// Labels repeated within a scene get spatial qualifiers along the axis of
// largest spread.
void assign_names(std::vector<ObjectInstance>& objects, std::vector<std::string>& labels) {
  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].describable()) by_label[labels[i]].push_back(i);
  }
  for (auto& [label, members] : by_label) {
    if (members.size() == 1) {
      objects[members[0]].name = label;
      continue;
    }
    int xmin = 1 << 30, xmax = -1, ymin = 1 << 30, ymax = -1;
    for (auto i : members) {
      xmin = std::min(xmin, objects[i].centroid.x);
      xmax = std::max(xmax, objects[i].centroid.x);
      ymin = std::min(ymin, objects[i].centroid.y);
      ymax = std::max(ymax, objects[i].centroid.y);
    }
    const bool horizontal = xmax - xmin >= ymax - ymin;
    std::stable_sort(members.begin(), members.end(), [&](auto a, auto b) {
      return horizontal ? objects[a].centroid.x < objects[b].centroid.x
                        : objects[a].centroid.y < objects[b].centroid.y;
    });
    static const std::vector<std::string> two_h{"left", "right"}, two_v{"top", "bottom"};
    static const std::vector<std::string> three_h{"left", "middle", "right"},
        three_v{"top", "middle", "bottom"};
    if (members.size() > 3) {
      for (std::size_t k = 0; k < members.size(); ++k) {
        objects[members[k]].name = "#" + std::to_string(k + 1) + " from the " +
                                   (horizontal ? "left " : "top ") + label;
      }
      continue;
    }
    const auto& words = members.size() == 2 ? (horizontal ? two_h : two_v)
                                            : (horizontal ? three_h : three_v);
    for (std::size_t k = 0; k < members.size(); ++k) {
      objects[members[k]].name = words[k] + " " + label;
    }
  }
}

}  // namespace

std::vector<std::string> default_name_pool() {
  return {"sugar box",     "canned meat",   "mustard bottle", "cracker box",  "tomato soup can",
          "bleach bottle", "coffee can",    "banana",         "apple",        "mug",
          "bowl",          "sponge",        "tuna can",       "gelatin box",  "pudding box",
          "scissors",      "marker",        "power drill",    "wood block",   "tennis ball",
          "plastic cup",   "spatula",       "padlock",        "clamp"};
}

void GenConfig::validate() const {
  if (min_objects < 1 || max_objects < min_objects) {
    throw DomainError("object count range must satisfy 1 <= min <= max");
  }
  if (width < 32 || height < 32) throw DomainError("image size must be at least 32x32");
  if (!(overlap_bias >= 0.0)) throw DomainError("overlap bias must be nonnegative");
  if (name_pool.empty()) throw DomainError("name pool is empty");
  if (max_retries < 1) throw DomainError("retry budget must be positive");
}

SceneRecord generate_scene(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const int n = rng.integer(cfg.min_objects, cfg.max_objects);
  const int short_side = std::min(cfg.width, cfg.height);
  const int min_side = std::max(8, short_side / 16);
  const int max_side = std::max(min_side, short_side / 4);
  const double anchored_share = cfg.overlap_bias / (1.0 + cfg.overlap_bias);

  std::vector<Box> boxes;
  std::vector<Mask> amodal;
  std::vector<std::string> labels;
  std::map<std::string, int> label_uses;
  for (int i = 0; i < n; ++i) {
    const int w = rng.integer(min_side, max_side);
    const int h = rng.integer(min_side, max_side);
    bool anchored = i > 0 && rng.uniform() < anchored_share;
    Box box{};
    if (!anchored) {
      bool placed = false;
      for (int attempt = 0; attempt < cfg.max_retries && !placed; ++attempt) {
        box = box_around(rng.uniform(0, cfg.width), rng.uniform(0, cfg.height), w, h, cfg.width,
                         cfg.height);
        placed = std::none_of(boxes.begin(), boxes.end(), [&](const Box& b) {
          return box.x0 <= b.x1 && b.x0 <= box.x1 && box.y0 <= b.y1 && b.y0 <= box.y1;
        });
      }
      if (!placed) {
        if (cfg.overlap_bias == 0.0 || i == 0) {
          throw GenerationError("could not place object " + std::to_string(i + 1) + " of " +
                                std::to_string(n) + " without overlap after " +
                                std::to_string(cfg.max_retries) + " attempts");
        }
        anchored = true;
      }
    }
    if (anchored) {
      const Box& a = boxes[static_cast<std::size_t>(rng.integer(0, i - 1))];
      const double reach_x = 0.8 * ((a.x1 - a.x0 + 1) + w) / 2.0;
      const double reach_y = 0.8 * ((a.y1 - a.y0 + 1) + h) / 2.0;
      box = box_around((a.x0 + a.x1) / 2.0 + rng.uniform(-reach_x, reach_x),
                       (a.y0 + a.y1) / 2.0 + rng.uniform(-reach_y, reach_y), w, h, cfg.width,
                       cfg.height);
    }
    boxes.push_back(box);
    amodal.push_back(rasterize(box, cfg.shapes, rng, cfg.width, cfg.height));

    std::string label;
    do {
      label = cfg.name_pool[static_cast<std::size_t>(
          rng.integer(0, static_cast<int>(cfg.name_pool.size()) - 1))];
    } while (label_uses[label] >= 3 && static_cast<std::size_t>(i) < 3 * cfg.name_pool.size());
    ++label_uses[label];
    labels.push_back(label);
  }

  SceneRecord scene;
  scene.scene_id = cfg.scene_prefix + "/scene" + std::to_string(cfg.seed);
  scene.view_id = "0";
  scene.width = cfg.width;
  scene.height = cfg.height;
  // Painter's order: later objects sit on top.
  Mask covered(cfg.width, cfg.height);
  std::vector<Mask> modal(amodal.size(), covered);
  for (std::size_t i = amodal.size(); i-- > 0;) {
    modal[i] = amodal[i].minus(covered);
    covered = covered | amodal[i];
  }
  for (std::size_t i = 0; i < amodal.size(); ++i) {
    const double visible =
        static_cast<double>(modal[i].count()) / static_cast<double>(amodal[i].count());
    scene.objects.push_back(ObjectInstance{
        .id = static_cast<int>(i) + 1,
        .name = visible < cfg.min_describable_visibility ? std::string(kIndescribable) : labels[i],
        // label anchor on the visible part, so a mention at it resolves back
        .centroid = modal[i].representative_point().value_or(amodal_centroid(amodal[i])),
        .z_rank = static_cast<int>(i),
        .amodal = amodal[i],
        .modal = modal[i],
    });
  }
  assign_names(scene.objects, labels);
  validate_scene(scene);
  return scene;
}

bool eligible_target(const ObjectInstance& object, const OcclusionConfig& occlusion) {
  const auto area = object.amodal.count();
  if (area == 0) return false;
  const double hidden = 1.0 - static_cast<double>(object.modal.count()) / static_cast<double>(area);
  return hidden <= occlusion.max_ratio;
}

std::vector<SuiteEntry> generate_suite(const GenConfig& cfg, const std::map<Difficulty, int>& counts,
                                       const OcclusionConfig& occlusion, int max_scenes) {
  std::map<Difficulty, int> need;
  for (const auto& [d, c] : counts) {
    if (c < 0) throw DomainError("bucket counts must be nonnegative");
    if (c > 0) need[d] = c;
  }
  std::vector<SuiteEntry> out;
  for (int s = 0; s < max_scenes && !need.empty(); ++s) {
    GenConfig scene_cfg = cfg;
    scene_cfg.seed = cfg.seed + static_cast<std::uint64_t>(s);
    const SceneRecord scene = generate_scene(scene_cfg);
    const auto relations = build_relations(scene, occlusion);
    for (const auto& object : scene.objects) {
      if (!eligible_target(object, occlusion)) continue;
      const auto record = make_graph_record(scene, relations, object.id);
      auto it = need.find(record.difficulty);
      if (it == need.end()) continue;
      out.push_back({scene, object.id, record.difficulty});
      if (--it->second == 0) need.erase(it);
    }
  }
  if (!need.empty()) {
    const auto& [d, missing] = *need.begin();
    throw GenerationError("could not fill difficulty bucket " + std::string(to_string(d)) + " (" +
                          std::to_string(missing) + " short) within " +
                          std::to_string(max_scenes) + " scenes");
  }
  return out;
}

}  // namespace unobstruct

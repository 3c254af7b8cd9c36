// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

// Test helpers and brute-force oracles. Nothing here calls into the library
// code it is used to check.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "unobstruct/graph.hpp"
#include "unobstruct/metrics.hpp"
#include "unobstruct/scene.hpp"

namespace unobstruct::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(UNOBSTRUCT_FIXTURES) + "/" + name;
}

inline SceneRecord fixture_scene() { return load_scene(fixture_path("scene4616.json")); }

inline constexpr const char* kFixtureSomAnswer =
    "<think>\n"
    "Path1: Object 4 is obstructed by object 1 with the occlusion ratio of 4%\n"
    "Path2: Object 4 is obstructed by object 3 with the occlusion ratio of 7%\n"
    "</think>\n"
    "<answer>[1, 3]</answer>";

inline constexpr const char* kFixtureNlpAnswerList =
    "[<points 831 677>bottom canned meat</points>, <points 383 585>left sugar box</points>]";

struct BoxSpec {
  int id;
  int z_rank;
  int x0, y0, x1, y1;  // inclusive
  std::string name = "box";
};

/// Scene of axis-aligned boxes; modal masks by painting in z order and
/// centroids from the box corners.
inline SceneRecord box_scene(int width, int height, const std::vector<BoxSpec>& boxes,
                             std::string scene_id = "test/boxes") {
  SceneRecord scene{std::move(scene_id), "0", width, height, {}};
  for (const auto& b : boxes) {
    Mask amodal(width, height);
    for (int y = b.y0; y <= b.y1; ++y) {
      for (int x = b.x0; x <= b.x1; ++x) amodal.set(x, y);
    }
    Mask modal = amodal;
    for (const auto& other : boxes) {
      if (other.z_rank <= b.z_rank) continue;
      for (int y = other.y0; y <= other.y1; ++y) {
        for (int x = other.x0; x <= other.x1; ++x) {
          if (x >= 0 && y >= 0 && x < width && y < height) modal.set(x, y, false);
        }
      }
    }
    const int cx = (b.x0 + b.x1 + 1) / 2;
    const int cy = (b.y0 + b.y1 + 1) / 2;
    scene.objects.push_back({b.id, b.name, {cx, cy}, b.z_rank, amodal, modal});
  }
  return scene;
}

// Graph oracle: plain recursive DFS over an adjacency map.

struct GraphOracle {
  std::set<int> ancestors;
  std::set<int> tops;
  std::vector<std::vector<int>> paths;  // top-first, sorted
};

inline void oracle_reach(const std::map<int, std::vector<int>>& adj, int u, std::set<int>& seen) {
  auto it = adj.find(u);
  if (it == adj.end()) return;
  for (int v : it->second) {
    if (seen.insert(v).second) oracle_reach(adj, v, seen);
  }
}

inline void oracle_paths(const std::map<int, std::vector<int>>& adj, int u,
                         std::vector<int>& stack, std::vector<std::vector<int>>& out) {
  stack.push_back(u);
  auto it = adj.find(u);
  if (it == adj.end() || it->second.empty()) {
    if (stack.size() > 1) out.emplace_back(stack.rbegin(), stack.rend());
  } else {
    for (int v : it->second) oracle_paths(adj, v, stack, out);
  }
  stack.pop_back();
}

/// `edges` are (obstructed, obstructor) pairs over an acyclic relation.
inline GraphOracle graph_oracle(const std::vector<std::pair<int, int>>& edges, int target) {
  std::map<int, std::vector<int>> adj;
  for (auto [below, above] : edges) adj[below].push_back(above);
  GraphOracle g;
  oracle_reach(adj, target, g.ancestors);
  for (int a : g.ancestors) {
    if (!adj.count(a) || adj[a].empty()) g.tops.insert(a);
  }
  if (g.ancestors.empty()) g.tops = {target};
  std::vector<int> stack;
  oracle_paths(adj, target, stack, g.paths);
  std::sort(g.paths.begin(), g.paths.end());
  g.paths.erase(std::unique(g.paths.begin(), g.paths.end()), g.paths.end());
  return g;
}

// Assignment oracle: every injective row-to-column map.

inline double exhaustive_assignment(const CostMatrix& c) {
  const bool flip = c.rows() > c.cols();
  const std::size_t n = flip ? c.cols() : c.rows();
  const std::size_t m = flip ? c.rows() : c.cols();
  auto at = [&](std::size_t r, std::size_t col) { return flip ? c(col, r) : c(r, col); };
  if (n == 0) return 0.0;
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) total += at(r, perm[r]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Costs k/64 with k in [0, 64 * max_whole]; sums of these are exact.
inline CostMatrix dyadic_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                                int max_whole = 4) {
  std::uniform_int_distribution<int> k(0, 64 * max_whole);
  CostMatrix c(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t col = 0; col < cols; ++col) c(r, col) = k(rng) / 64.0;
  }
  return c;
}

// Edit distance oracle: the textbook recursion, no memo.

inline std::size_t naive_levenshtein(const std::vector<int>& a, std::size_t i,
                                     const std::vector<int>& b, std::size_t j) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  if (a[i] == b[j]) return naive_levenshtein(a, i + 1, b, j + 1);
  return 1 + std::min({naive_levenshtein(a, i + 1, b, j), naive_levenshtein(a, i, b, j + 1),
                       naive_levenshtein(a, i + 1, b, j + 1)});
}

inline std::size_t naive_levenshtein(const std::vector<int>& a, const std::vector<int>& b) {
  return naive_levenshtein(a, 0, b, 0);
}

/// Random scene of at most `max_objects` boxes on a small grid, each at its
/// own depth.
inline SceneRecord random_box_scene(std::mt19937_64& rng, int max_objects, int size = 48) {
  std::uniform_int_distribution<int> count(1, max_objects);
  std::uniform_int_distribution<int> pos(0, size - 1);
  std::uniform_int_distribution<int> extent(4, size / 2);
  const int n = count(rng);
  std::vector<int> depth(n);
  std::iota(depth.begin(), depth.end(), 0);
  std::shuffle(depth.begin(), depth.end(), rng);
  std::vector<BoxSpec> boxes;
  for (int i = 0; i < n; ++i) {
    const int x0 = pos(rng), y0 = pos(rng);
    boxes.push_back({i + 1, depth[i], x0, y0, std::min(size - 1, x0 + extent(rng)),
                     std::min(size - 1, y0 + extent(rng)), "box"});
  }
  return box_scene(size, size, boxes, "test/random");
}

}  // namespace unobstruct::testing

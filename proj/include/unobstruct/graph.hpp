// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unobstruct/occlusion.hpp"
#include "unobstruct/scene.hpp"

namespace unobstruct {

/// Directed edge from an obstructed object to its obstructor.
struct Edge {
  int below = 0;
  int above = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Difficulty { NoOcc, Easy, Medium, Hard };

inline constexpr Difficulty kAllDifficulties[] = {Difficulty::NoOcc, Difficulty::Easy,
                                                   Difficulty::Medium, Difficulty::Hard};

/// "No-Occ", "Easy", "Medium", "Hard".
std::string_view to_string(Difficulty difficulty);
Difficulty difficulty_from_string(std::string_view text);  // throws SchemaError

/// Every retained pairwise relation of the scene, ordered by (below, above).
std::vector<OcclusionRelation> build_relations(const SceneRecord& scene,
                                               const OcclusionConfig& config = {});

std::vector<Edge> edges_of(std::span<const OcclusionRelation> relations);

struct RelationVerdict {
  bool accepted = true;
  std::vector<Edge> bidirectional;  // one entry per pair, below < above
  std::vector<Edge> cyclic;         // every edge lying on a directed cycle
  std::string describe() const;
};

RelationVerdict validate_relations(std::span<const Edge> edges);
RelationVerdict validate_relations(std::span<const OcclusionRelation> relations);

/// Target-centric obstruction graph: the target plus everything that
/// obstructs it directly or transitively.
class TargetGraph {
 public:
  TargetGraph(int target, std::set<int> nodes, std::set<Edge> edges);

  int target() const { return target_; }
  const std::set<int>& nodes() const { return nodes_; }
  const std::set<Edge>& edges() const { return edges_; }
  bool obstructed() const { return !edges_.empty(); }

  /// Direct obstructors of `id`, ascending.
  std::vector<int> obstructors_of(int id) const;
  std::size_t out_degree(int id) const;

 private:
  int target_;
  std::set<int> nodes_;
  std::set<Edge> edges_;
};

/// Throws LookupError for an unknown target and ValidationError when the
/// edges contain a cycle.
TargetGraph target_graph(std::span<const Edge> edges, int target, const std::set<int>& object_ids);

/// Every node reachable from the target, target excluded.
std::set<int> ancestors(const TargetGraph& graph);

/// Ancestors nobody obstructs; {target} for an unobstructed target.
std::set<int> top_level(const TargetGraph& graph);

/// Object ids from a top-level obstructor down to the target (target last).
using ObstructionPath = std::vector<int>;

inline constexpr std::size_t kDefaultPathCap = 64;

/// All maximal target-to-sink paths in top-first order, sorted
/// lexicographically. Throws PathExplosionError past `cap` paths.
std::vector<ObstructionPath> enumerate_paths(const TargetGraph& graph,
                                             std::size_t cap = kDefaultPathCap);

/// Fewest removals along any single path; 0 when there are no paths.
int k_min(std::span<const ObstructionPath> paths);

/// Throws DomainError when (k_min, num_paths) is inconsistent.
Difficulty classify_difficulty(int k_min, int num_paths);

/// Per-target graph document.
struct GraphRecord {
  std::string scene_id;
  std::string view_id;
  int target = 0;
  std::vector<ObstructionPath> paths;
  std::vector<int> top_objects;
  std::vector<int> depends_on;
  int k_min = 0;
  int num_paths = 0;
  Difficulty difficulty = Difficulty::NoOcc;
  std::vector<OcclusionRelation> relations;  // edges of the target graph
  std::string scene_path;                    // optional; empty when unknown

  friend bool operator==(const GraphRecord&, const GraphRecord&) = default;
};

GraphRecord make_graph_record(const SceneRecord& scene,
                              std::span<const OcclusionRelation> relations, int target,
                              std::size_t path_cap = kDefaultPathCap);
/// Same, from bare relations when no scene is at hand.
GraphRecord make_graph_record(const std::string& scene_id, const std::string& view_id,
                              const std::set<int>& object_ids,
                              std::span<const OcclusionRelation> relations, int target,
                              std::size_t path_cap = kDefaultPathCap);

/// Rebuilds the target graph held by a record.
TargetGraph graph_of(const GraphRecord& record);

json graph_record_to_json(const GraphRecord& record);
GraphRecord graph_record_from_json(const json& doc);

/// Inconsistencies between the stored sets and the stored paths (depends_on
/// must equal the ancestors, top_objects the path heads). Empty when clean.
std::vector<std::string> review_flags(const GraphRecord& record);

}  // namespace unobstruct

// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "unobstruct/error.hpp"

namespace unobstruct {

namespace {

using Adjacency = std::map<int, std::vector<int>>;

Adjacency adjacency_of(std::span<const Edge> edges) {
  Adjacency adj;
  for (const auto& e : edges) adj[e.below].push_back(e.above);
  for (auto& [_, next] : adj) {
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
  }
  return adj;
}

std::set<int> reachable_from(const Adjacency& adj, int start) {
  std::set<int> seen;
  std::vector<int> stack{start};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    auto it = adj.find(u);
    if (it == adj.end()) continue;
    for (int v : it->second) {
      if (seen.insert(v).second) stack.push_back(v);
    }
  }
  return seen;
}

std::string format_edges(std::span<const Edge> edges) {
  std::ostringstream out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out << ", ";
    out << edges[i].below << "->" << edges[i].above;
  }
  return out.str();
}

}  // namespace

std::string_view to_string(Difficulty difficulty) {
  switch (difficulty) {
    case Difficulty::NoOcc: return "No-Occ";
    case Difficulty::Easy: return "Easy";
    case Difficulty::Medium: return "Medium";
    case Difficulty::Hard: return "Hard";
  }
  return "No-Occ";
}

Difficulty difficulty_from_string(std::string_view text) {
  for (auto d : kAllDifficulties) {
    if (to_string(d) == text) return d;
  }
  throw SchemaError("unknown difficulty '" + std::string(text) + "'");
}

std::vector<OcclusionRelation> build_relations(const SceneRecord& scene,
                                               const OcclusionConfig& config) {
  std::vector<OcclusionRelation> out;
  for (const auto& lower : scene.objects) {
    for (const auto& upper : scene.objects) {
      if (lower.z_rank >= upper.z_rank) continue;
      if (auto r = pairwise_occlusion(lower, upper, config)) out.push_back(*r);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return Edge{a.below, a.above} < Edge{b.below, b.above};
  });
  return out;
}

std::vector<Edge> edges_of(std::span<const OcclusionRelation> relations) {
  std::vector<Edge> out;
  out.reserve(relations.size());
  for (const auto& r : relations) out.push_back({r.below, r.above});
  return out;
}

std::string RelationVerdict::describe() const {
  if (accepted) return "accepted";
  std::string out = "rejected";
  if (!bidirectional.empty()) out += "; bidirectional pairs: " + format_edges(bidirectional);
  if (!cyclic.empty()) out += "; edges on cycles: " + format_edges(cyclic);
  return out;
}

RelationVerdict validate_relations(std::span<const Edge> edges) {
  RelationVerdict verdict;
  const std::set<Edge> unique(edges.begin(), edges.end());
  const Adjacency adj = adjacency_of(edges);
  std::map<int, std::set<int>> reach;
  for (const auto& [u, _] : adj) reach[u] = reachable_from(adj, u);
  for (const auto& e : unique) {
    if (e.below == e.above) {
      verdict.cyclic.push_back(e);
      continue;
    }
    if (e.below < e.above && unique.count({e.above, e.below})) verdict.bidirectional.push_back(e);
    auto it = reach.find(e.above);
    if (it != reach.end() && it->second.count(e.below)) verdict.cyclic.push_back(e);
  }
  verdict.accepted = verdict.bidirectional.empty() && verdict.cyclic.empty();
  return verdict;
}

RelationVerdict validate_relations(std::span<const OcclusionRelation> relations) {
  const auto edges = edges_of(relations);
  return validate_relations(std::span<const Edge>(edges));
}

TargetGraph::TargetGraph(int target, std::set<int> nodes, std::set<Edge> edges)
    : target_(target), nodes_(std::move(nodes)), edges_(std::move(edges)) {}

std::vector<int> TargetGraph::obstructors_of(int id) const {
  std::vector<int> out;
  for (auto it = edges_.lower_bound({id, std::numeric_limits<int>::min()});
       it != edges_.end() && it->below == id; ++it) {
    out.push_back(it->above);
  }
  return out;
}

std::size_t TargetGraph::out_degree(int id) const { return obstructors_of(id).size(); }

TargetGraph target_graph(std::span<const Edge> edges, int target, const std::set<int>& object_ids) {
  if (!object_ids.count(target)) {
    throw LookupError("target object " + std::to_string(target) + " not in scene");
  }
  const auto verdict = validate_relations(edges);
  if (!verdict.accepted) throw ValidationError("obstruction relations " + verdict.describe());

  const Adjacency adj = adjacency_of(edges);
  std::set<int> nodes = reachable_from(adj, target);
  nodes.insert(target);
  std::set<Edge> kept;
  for (const auto& e : edges) {
    if (nodes.count(e.below)) kept.insert(e);
  }
  return TargetGraph(target, std::move(nodes), std::move(kept));
}

std::set<int> ancestors(const TargetGraph& graph) {
  std::set<int> out = graph.nodes();
  out.erase(graph.target());
  return out;
}

std::set<int> top_level(const TargetGraph& graph) {
  if (!graph.obstructed()) return {graph.target()};
  std::set<int> out;
  for (int id : ancestors(graph)) {
    if (graph.out_degree(id) == 0) out.insert(id);
  }
  return out;
}

std::vector<ObstructionPath> enumerate_paths(const TargetGraph& graph, std::size_t cap) {
  std::vector<ObstructionPath> out;
  if (!graph.obstructed()) return out;
  std::vector<int> trail{graph.target()};
  std::function<void(int)> walk = [&](int node) {
    const auto next = graph.obstructors_of(node);
    if (next.empty()) {
      if (out.size() == cap) {
        throw PathExplosionError("target " + std::to_string(graph.target()) +
                                 " has more than " + std::to_string(cap) + " obstruction paths");
      }
      out.emplace_back(trail.rbegin(), trail.rend());
      return;
    }
    for (int v : next) {
      trail.push_back(v);
      walk(v);
      trail.pop_back();
    }
  };
  walk(graph.target());
  std::sort(out.begin(), out.end());
  return out;
}

int k_min(std::span<const ObstructionPath> paths) {
  if (paths.empty()) return 0;
  std::size_t best = paths.front().size();
  for (const auto& p : paths) best = std::min(best, p.size());
  return static_cast<int>(best) - 1;
}

Difficulty classify_difficulty(int k, int p) {
  if (k < 0 || p < 0 || (k == 0) != (p == 0)) {
    throw DomainError("inconsistent difficulty inputs k_min=" + std::to_string(k) +
                      ", num_paths=" + std::to_string(p));
  }
  if (k == 0) return Difficulty::NoOcc;
  if (k == 1 && p == 1) return Difficulty::Easy;
  if (k == 1 || (k == 2 && p <= 2)) return Difficulty::Medium;
  return Difficulty::Hard;
}

GraphRecord make_graph_record(const SceneRecord& scene,
                              std::span<const OcclusionRelation> relations, int target,
                              std::size_t path_cap) {
  return make_graph_record(scene.scene_id, scene.view_id, scene.ids(), relations, target,
                           path_cap);
}

GraphRecord make_graph_record(const std::string& scene_id, const std::string& view_id,
                              const std::set<int>& object_ids,
                              std::span<const OcclusionRelation> relations, int target,
                              std::size_t path_cap) {
  const auto edges = edges_of(relations);
  const TargetGraph graph = target_graph(edges, target, object_ids);
  GraphRecord record;
  record.scene_id = scene_id;
  record.view_id = view_id;
  record.target = target;
  record.paths = enumerate_paths(graph, path_cap);
  const auto tops = top_level(graph);
  const auto deps = ancestors(graph);
  record.top_objects.assign(tops.begin(), tops.end());
  record.depends_on.assign(deps.begin(), deps.end());
  record.k_min = k_min(record.paths);
  record.num_paths = static_cast<int>(record.paths.size());
  record.difficulty = classify_difficulty(record.k_min, record.num_paths);
  for (const auto& r : relations) {
    if (graph.edges().count({r.below, r.above})) record.relations.push_back(r);
  }
  return record;
}

TargetGraph graph_of(const GraphRecord& record) {
  std::set<int> nodes{record.target};
  std::set<Edge> edges;
  for (const auto& path : record.paths) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      nodes.insert(path[i]);
      if (i + 1 < path.size()) edges.insert({path[i + 1], path[i]});
    }
  }
  return TargetGraph(record.target, std::move(nodes), std::move(edges));
}

json graph_record_to_json(const GraphRecord& r) {
  json relations = json::array();
  for (const auto& rel : r.relations) relations.push_back(relation_to_json(rel));
  json doc = {{"schema_version", kSchemaVersion},
              {"scene_id", r.scene_id},
              {"view_id", r.view_id},
              {"target_object", r.target},
              {"obstruction_paths", r.paths},
              {"top_objects", r.top_objects},
              {"depends_on", r.depends_on},
              {"k_min", r.k_min},
              {"num_paths", r.num_paths},
              {"new_difficulty", std::string(to_string(r.difficulty))},
              {"relations", std::move(relations)}};
  if (!r.scene_path.empty()) doc["scene_path"] = r.scene_path;
  return doc;
}

GraphRecord graph_record_from_json(const json& doc) {
  GraphRecord r;
  try {
    r.scene_id = doc.at("scene_id").get<std::string>();
    r.view_id = doc.at("view_id").get<std::string>();
    r.target = doc.at("target_object").get<int>();
    r.paths = doc.at("obstruction_paths").get<std::vector<ObstructionPath>>();
    r.top_objects = doc.at("top_objects").get<std::vector<int>>();
    r.depends_on = doc.at("depends_on").get<std::vector<int>>();
    r.k_min = doc.at("k_min").get<int>();
    r.num_paths = doc.at("num_paths").get<int>();
    r.difficulty = difficulty_from_string(doc.at("new_difficulty").get<std::string>());
    if (doc.contains("relations")) {
      for (const auto& rel : doc.at("relations")) r.relations.push_back(relation_from_json(rel));
    }
    if (doc.contains("scene_path")) r.scene_path = doc.at("scene_path").get<std::string>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("graph record: ") + e.what());
  }
  return r;
}

std::vector<std::string> review_flags(const GraphRecord& r) {
  std::vector<std::string> flags;
  std::set<int> deps, heads;
  for (const auto& p : r.paths) {
    if (p.empty() || p.back() != r.target) {
      flags.push_back("path does not end at the target");
      continue;
    }
    heads.insert(p.front());
    deps.insert(p.begin(), p.end() - 1);
  }
  if (r.paths.empty()) heads.insert(r.target);
  if (std::set<int>(r.depends_on.begin(), r.depends_on.end()) != deps) {
    flags.push_back("depends_on differs from the ancestors implied by obstruction_paths");
  }
  if (std::set<int>(r.top_objects.begin(), r.top_objects.end()) != heads) {
    flags.push_back("top_objects differs from the heads of obstruction_paths");
  }
  if (r.num_paths != static_cast<int>(r.paths.size())) flags.push_back("num_paths mismatch");
  if (r.k_min != k_min(r.paths)) flags.push_back("k_min mismatch");
  return flags;
}

}  // namespace unobstruct

// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "unobstruct/agents.hpp"
#include "unobstruct/config.hpp"
#include "unobstruct/dataset.hpp"
#include "unobstruct/error.hpp"
#include "unobstruct/graph.hpp"
#include "unobstruct/parallel.hpp"
#include "unobstruct/scene_gen.hpp"
#include "unobstruct/vqa.hpp"

namespace unobstruct {

namespace fs = std::filesystem;

namespace {

bool g_verbose = false;

void log(const std::string& message) {
  if (g_verbose) std::cerr << "unobstruct: " << message << '\n';
}

/// `target` expressed relative to `dir`, or absolute when no relative form
/// exists (different roots).
std::string path_from(const fs::path& target, const fs::path& dir) {
  const fs::path abs_target = fs::absolute(target).lexically_normal();
  const fs::path abs_dir = fs::absolute(dir.empty() ? fs::path(".") : dir).lexically_normal();
  fs::path rel = abs_target.lexically_relative(abs_dir);
  return rel.empty() ? abs_target.string() : rel.generic_string();
}

fs::path resolve_against(const std::string& path, const fs::path& dir) {
  fs::path p = path;
  return p.is_relative() ? dir / p : p;
}

void ensure_parent(const fs::path& file) {
  const auto parent = file.parent_path();
  if (parent.empty()) return;
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) throw IoError("cannot create " + parent.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  ensure_parent(path);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_records(const fs::path& path, const std::vector<json>& records) {
  ensure_parent(path);
  write_jsonl(path, records);
}

std::string scene_file_name(const std::string& scene_id) {
  std::string name = scene_id;
  for (char& c : name) {
    if (c == '/' || c == '\\' || c == ':') c = '_';
  }
  return name + ".json";
}

struct GlobalOptions {
  std::string config_path;
  std::optional<int> jobs;
  bool verbose = false;
};

EvalConfig effective_config(const GlobalOptions& global) {
  EvalConfig config = default_config();
  if (!global.config_path.empty()) config = load_config(global.config_path, config);
  if (global.jobs) {
    if (*global.jobs < 1) throw ValidationError("--jobs must be at least 1");
    config.jobs = *global.jobs;
  }
  return config;
}

struct CueOptions {
  bool no_ratio = false;
  bool contact_point = false;
  bool degree_word = false;
  bool short_template = false;
  std::string som_root = SynthOptions{}.som_image_root;
  std::string nlp_root = SynthOptions{}.nlp_image_root;

  void add_to(CLI::App& cmd) {
    cmd.add_flag("--no-ratio", no_ratio, "Omit occlusion ratios from reasoning steps");
    cmd.add_flag("--contact-point", contact_point, "Add contact points to reasoning steps");
    cmd.add_flag("--degree-word", degree_word, "Add degree words to reasoning steps");
    cmd.add_flag("--short-template", short_template, "Use the short step template");
    cmd.add_option("--som-image-root", som_root, "Image directory for set-of-mark samples")
        ->capture_default_str();
    cmd.add_option("--nlp-image-root", nlp_root, "Image directory for natural-language samples")
        ->capture_default_str();
  }

  SynthOptions resolve(const EvalConfig& config) const {
    SynthOptions o;
    o.ratio = !no_ratio;
    o.contact_point = contact_point;
    o.degree_word = degree_word;
    o.short_template = short_template;
    o.degrees = config.occlusion.degrees;
    o.som_image_root = som_root;
    o.nlp_image_root = nlp_root;
    return o;
  }
};

// gen-scenes -----------------------------------------------------------------

struct GenScenesOptions {
  std::uint64_t seed = 0;
  int count = 0;
  std::string out = "scenes_out";
  int noocc = 0, easy = 0, medium = 0, hard = 0;
  int max_scenes = 20000;
  GenConfig gen;
  std::string shapes = "rect";
};

int cmd_gen_scenes(const GenScenesOptions& o, const EvalConfig& config) {
  GenConfig gen = o.gen;
  gen.seed = o.seed;
  gen.shapes = o.shapes == "convex" ? ShapeFamily::ConvexPolygons : ShapeFamily::Rectangles;
  gen.validate();
  const fs::path out_dir = o.out;
  const fs::path scene_dir = out_dir / "scenes";
  std::error_code ec;
  fs::create_directories(scene_dir, ec);
  if (ec) throw IoError("cannot create " + scene_dir.string() + ": " + ec.message());

  struct Line {
    std::size_t scene;
    int target;
    Difficulty difficulty;
  };
  std::vector<SceneRecord> scenes;
  std::vector<Line> lines;
  const bool buckets = o.noocc + o.easy + o.medium + o.hard > 0;
  if (buckets) {
    if (o.count > 0) throw ValidationError("--count cannot be combined with bucket counts");
    const std::map<Difficulty, int> counts{{Difficulty::NoOcc, o.noocc},
                                           {Difficulty::Easy, o.easy},
                                           {Difficulty::Medium, o.medium},
                                           {Difficulty::Hard, o.hard}};
    std::map<std::string, std::size_t> seen;
    for (auto& entry : generate_suite(gen, counts, config.occlusion, o.max_scenes)) {
      auto [it, fresh] = seen.emplace(entry.scene.scene_id, scenes.size());
      if (fresh) scenes.push_back(std::move(entry.scene));
      lines.push_back({it->second, entry.target, entry.difficulty});
    }
  } else {
    if (o.count < 1) throw ValidationError("give --count or at least one bucket count");
    scenes.resize(static_cast<std::size_t>(o.count));
    std::vector<std::vector<Line>> per_scene(scenes.size());
    parallel_for(scenes.size(), config.jobs, [&](std::size_t i) {
      GenConfig cfg = gen;
      cfg.seed = gen.seed + i;
      scenes[i] = generate_scene(cfg);
      const auto relations = build_relations(scenes[i], config.occlusion);
      for (const auto& object : scenes[i].objects) {
        if (!eligible_target(object, config.occlusion)) continue;
        const auto record = make_graph_record(scenes[i], relations, object.id, config.path_cap);
        per_scene[i].push_back({i, object.id, record.difficulty});
      }
    });
    for (auto& v : per_scene) lines.insert(lines.end(), v.begin(), v.end());
  }

  std::vector<std::string> files(scenes.size());
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    files[i] = "scenes/" + scene_file_name(scenes[i].scene_id);
    save_scene(out_dir / files[i], scenes[i]);
  }
  std::vector<json> manifest;
  std::map<Difficulty, int> tally;
  for (const auto& line : lines) {
    const auto& scene = scenes[line.scene];
    manifest.push_back({{"schema_version", kSchemaVersion},
                        {"scene_path", files[line.scene]},
                        {"scene_id", scene.scene_id},
                        {"view_id", scene.view_id},
                        {"target", line.target},
                        {"difficulty", std::string(to_string(line.difficulty))}});
    ++tally[line.difficulty];
  }
  write_records(out_dir / "manifest.jsonl", manifest);
  std::string summary = std::to_string(scenes.size()) + " scenes, " +
                        std::to_string(lines.size()) + " targets";
  for (Difficulty d : kAllDifficulties) {
    summary += ", " + std::string(to_string(d)) + " " + std::to_string(tally[d]);
  }
  std::cout << summary << '\n';
  return kExitOk;
}

// build-graphs ---------------------------------------------------------------

struct BuildGraphsOptions {
  std::string manifest, scene, relations;
  std::optional<int> target;
  std::string out = "graphs.jsonl";
};

void reject_invalid(const std::vector<Edge>& edges) {
  const auto verdict = validate_relations(edges);
  if (!verdict.accepted) throw ValidationError("relations " + verdict.describe());
}

std::vector<GraphRecord> graphs_from_scene(const SceneRecord& scene, std::optional<int> target,
                                           const EvalConfig& config) {
  const auto relations = build_relations(scene, config.occlusion);
  reject_invalid(edges_of(relations));
  std::vector<GraphRecord> out;
  if (target) {
    out.push_back(make_graph_record(scene, relations, *target, config.path_cap));
    return out;
  }
  for (const auto& object : scene.objects) {
    if (eligible_target(object, config.occlusion)) {
      out.push_back(make_graph_record(scene, relations, object.id, config.path_cap));
    }
  }
  return out;
}

std::vector<GraphRecord> graphs_from_relations(const fs::path& path, std::optional<int> target,
                                               const EvalConfig& config) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  std::string scene_id, view_id;
  std::set<int> ids;
  std::vector<OcclusionRelation> relations;
  try {
    scene_id = doc.at("scene_id").get<std::string>();
    view_id = doc.value("view_id", std::string("0"));
    for (const auto& id : doc.at("object_ids")) ids.insert(id.get<int>());
    for (const auto& r : doc.at("relations")) {
      if (r.contains("mask_ratio")) {
        relations.push_back(relation_from_json(r, config.occlusion.degrees));
      } else {
        OcclusionRelation rel;
        rel.above = r.at("obj1").get<int>();
        rel.below = r.at("obj2").get<int>();
        relations.push_back(rel);
      }
    }
  } catch (const json::exception& e) {
    throw SchemaError(path.string() + ": relations document: " + e.what());
  }
  for (const auto& r : relations) {
    if (!ids.count(r.above) || !ids.count(r.below)) {
      throw ValidationError("relation " + std::to_string(r.above) + " occludes " +
                            std::to_string(r.below) + " names an unknown object");
    }
  }
  std::sort(relations.begin(), relations.end(), [](const auto& a, const auto& b) {
    return Edge{a.below, a.above} < Edge{b.below, b.above};
  });
  reject_invalid(edges_of(relations));
  std::vector<GraphRecord> out;
  if (target) {
    out.push_back(make_graph_record(scene_id, view_id, ids, relations, *target, config.path_cap));
  } else {
    for (int id : ids) {
      out.push_back(make_graph_record(scene_id, view_id, ids, relations, id, config.path_cap));
    }
  }
  return out;
}

int cmd_build_graphs(const BuildGraphsOptions& o, const EvalConfig& config) {
  const int sources = !o.manifest.empty() + !o.scene.empty() + !o.relations.empty();
  if (sources != 1) throw ValidationError("give exactly one of --manifest, --scene, --relations");
  const fs::path out_path = o.out;
  const fs::path out_dir = out_path.parent_path();
  std::vector<GraphRecord> records;

  if (!o.scene.empty()) {
    records = graphs_from_scene(load_scene(o.scene), o.target, config);
    for (auto& r : records) r.scene_path = path_from(o.scene, out_dir);
  } else if (!o.relations.empty()) {
    records = graphs_from_relations(o.relations, o.target, config);
  } else {
    const fs::path manifest_dir = fs::path(o.manifest).parent_path();
    // Scenes in first-seen order; each manifest line asks for one target.
    std::vector<std::string> scene_paths;
    std::map<std::string, std::size_t> scene_index;
    std::vector<std::pair<std::size_t, std::optional<int>>> requests;
    for (const auto& line : read_jsonl(o.manifest)) {
      std::string scene_path;
      std::optional<int> target;
      try {
        scene_path = line.at("scene_path").get<std::string>();
        if (line.contains("target") && !line.at("target").is_null()) {
          target = line.at("target").get<int>();
        }
      } catch (const json::exception& e) {
        throw SchemaError(o.manifest + ": manifest line: " + e.what());
      }
      auto [it, fresh] = scene_index.emplace(scene_path, scene_paths.size());
      if (fresh) scene_paths.push_back(scene_path);
      requests.emplace_back(it->second, target);
    }
    std::vector<SceneRecord> scenes(scene_paths.size());
    std::vector<std::vector<OcclusionRelation>> relations(scene_paths.size());
    parallel_for(scene_paths.size(), config.jobs, [&](std::size_t i) {
      scenes[i] = load_scene(resolve_against(scene_paths[i], manifest_dir));
      relations[i] = build_relations(scenes[i], config.occlusion);
      reject_invalid(edges_of(relations[i]));
    });
    log("loaded " + std::to_string(scenes.size()) + " scenes");
    std::vector<std::vector<GraphRecord>> per_request(requests.size());
    parallel_for(requests.size(), config.jobs, [&](std::size_t i) {
      const auto& [s, target] = requests[i];
      const std::string rel_path =
          path_from(resolve_against(scene_paths[s], manifest_dir), out_dir);
      auto emit = [&](int id) {
        auto record = make_graph_record(scenes[s], relations[s], id, config.path_cap);
        record.scene_path = rel_path;
        per_request[i].push_back(std::move(record));
      };
      if (target) {
        emit(*target);
      } else {
        for (const auto& object : scenes[s].objects) {
          if (eligible_target(object, config.occlusion)) emit(object.id);
        }
      }
    });
    for (auto& v : per_request) {
      for (auto& r : v) records.push_back(std::move(r));
    }
  }

  std::vector<json> docs;
  for (const auto& r : records) {
    for (const auto& flag : review_flags(r)) log(r.scene_id + " target " + std::to_string(r.target) + ": " + flag);
    docs.push_back(graph_record_to_json(r));
  }
  write_records(out_path, docs);
  std::cout << records.size() << " graph records\n";
  return kExitOk;
}

// synth-vqa ------------------------------------------------------------------

struct SynthVqaOptions {
  std::string graphs;
  std::string out = "vqa.jsonl";
  std::string setting = "both";
  CueOptions cues;
};

int cmd_synth_vqa(const SynthVqaOptions& o, const EvalConfig& config) {
  const bool som = o.setting == "som" || o.setting == "both";
  const bool nlp = o.setting == "nlp" || o.setting == "both";
  const SynthOptions options = o.cues.resolve(config);
  const fs::path graphs_dir = fs::path(o.graphs).parent_path();
  const fs::path out_dir = fs::path(o.out).parent_path();

  std::vector<GraphRecord> records;
  for (const auto& doc : read_jsonl(o.graphs)) records.push_back(graph_record_from_json(doc));

  SceneCache cache;
  std::vector<std::shared_ptr<const SceneRecord>> scenes(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    if (r.scene_path.empty()) continue;
    const fs::path scene_path = resolve_against(r.scene_path, graphs_dir);
    if (nlp) scenes[i] = cache.get(scene_path);
    r.scene_path = path_from(scene_path, out_dir);
  }

  std::vector<std::vector<json>> per_record(records.size());
  std::vector<int> skipped(records.size(), 0);
  parallel_for(records.size(), config.jobs, [&](std::size_t i) {
    const auto& r = records[i];
    if (som) per_record[i].push_back(vqa_to_json(synth_som(r, options)));
    if (nlp) {
      if (!scenes[i]) {
        throw ValidationError("graph record " + r.scene_id + " target " + std::to_string(r.target) +
                              " has no scene_path; natural-language synthesis needs the scene");
      }
      if (auto sample = synth_nlp(r, *scenes[i], options)) {
        per_record[i].push_back(vqa_to_json(*sample));
      } else {
        skipped[i] = 1;
      }
    }
  });
  std::vector<json> docs;
  for (auto& v : per_record) docs.insert(docs.end(), v.begin(), v.end());
  int skip_count = 0;
  for (int s : skipped) skip_count += s;
  write_records(o.out, docs);
  std::cout << docs.size() << " VQA records";
  if (skip_count) std::cout << " (" << skip_count << " natural-language samples skipped)";
  std::cout << '\n';
  return kExitOk;
}

// run-agent ------------------------------------------------------------------

struct RunAgentOptions {
  std::string vqa;
  std::string out = "predictions.jsonl";
  std::string agent = "oracle";
  NoiseSpec noise;
  CueOptions cues;
};

int cmd_run_agent(const RunAgentOptions& o, const EvalConfig& config) {
  o.noise.validate();
  const SynthOptions options = o.cues.resolve(config);
  const auto manifest = GroundTruthManifest::load(o.vqa);
  const auto& entries = manifest.entries();
  const bool corrupt = o.agent == "corrupted";
  std::vector<json> docs(entries.size());
  parallel_for(entries.size(), config.jobs, [&](std::size_t i) {
    const auto& e = entries[i];
    std::string output;
    if (corrupt) {
      if (!e.scene) {
        throw ValidationError("sample " + e.sample_id + " names no scene; corruption needs one");
      }
      output = corrupted_predict(e.gt, *e.scene, e.setting, o.noise, options);
    } else {
      output = oracle_predict(e.gt, e.scene.get(), e.setting, options);
    }
    docs[i] = prediction_to_json({e.sample_id, std::move(output)});
  });
  write_records(o.out, docs);
  std::cout << docs.size() << " predictions\n";
  return kExitOk;
}

// evaluate / reward / report -------------------------------------------------

struct EvaluateOptions {
  std::string predictions, vqa;
  std::string out = "report.json";
  std::string table, samples;
  std::optional<double> radius;
};

int cmd_evaluate(const EvaluateOptions& o, EvalConfig config) {
  if (o.radius) {
    if (!(*o.radius >= 0)) throw ValidationError("--radius must be nonnegative");
    config.resolve_radius = *o.radius;
  }
  const auto manifest = GroundTruthManifest::load(o.vqa);
  const auto predictions = read_predictions(o.predictions);
  const auto result = evaluate_dataset(predictions, manifest, config);
  write_text(o.out, report_to_json(result.report).dump(2) + "\n");
  const std::string table = report_table(result.report);
  if (!o.table.empty()) write_text(o.table, table);
  if (!o.samples.empty()) {
    std::vector<json> docs;
    for (const auto& s : result.samples) docs.push_back(sample_report_to_json(s));
    write_records(o.samples, docs);
  }
  std::cout << table;
  return kExitOk;
}

struct RewardOptions {
  std::string predictions, vqa;
  std::string out = "rewards.jsonl";
  std::optional<double> lambda_fmt, lambda_task;
};

int cmd_reward(const RewardOptions& o, EvalConfig config) {
  if (o.lambda_fmt) config.rewards.lambda_fmt = *o.lambda_fmt;
  if (o.lambda_task) config.rewards.lambda_task = *o.lambda_task;
  config.rewards.validate();
  const auto manifest = GroundTruthManifest::load(o.vqa);
  const auto predictions = read_predictions(o.predictions);
  const auto rewards = reward_dataset(predictions, manifest, config);
  std::vector<json> docs;
  double total = 0.0;
  for (const auto& r : rewards) {
    docs.push_back(reward_record_to_json(r));
    total += r.reward.r;
  }
  write_records(o.out, docs);
  std::cout << rewards.size() << " rewards";
  if (!rewards.empty()) std::cout << ", mean r " << total / static_cast<double>(rewards.size());
  std::cout << '\n';
  return kExitOk;
}

struct ReportOptions {
  std::string report;
  std::string out;
};

int cmd_report(const ReportOptions& o) {
  std::ifstream in(o.report);
  if (!in) throw IoError("cannot open " + o.report);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(o.report + ": " + e.what());
  }
  const std::string table = report_table(report_from_json(doc));
  if (!o.out.empty()) write_text(o.out, table);
  std::cout << table;
  return kExitOk;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Obstruction reasoning toolkit: scenes, graphs, VQA synthesis, evaluation"};
  app.name("unobstruct");
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--config", global.config_path,
                 std::string("Config file (default: $") + kConfigEnvVar + ")");
  app.add_option("--jobs", global.jobs, "Worker threads");
  app.add_flag("-v,--verbose", global.verbose, "Log progress to stderr");

  GenScenesOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-scenes", "Generate synthetic scenes and a manifest");
  gen_cmd->add_option("--seed", gen.seed, "First seed")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Number of scenes (one per seed)");
  gen_cmd->add_option("--out", gen.out, "Output directory")->capture_default_str();
  gen_cmd->add_option("--noocc", gen.noocc, "Targets wanted in the No-Occ bucket");
  gen_cmd->add_option("--easy", gen.easy, "Targets wanted in the Easy bucket");
  gen_cmd->add_option("--medium", gen.medium, "Targets wanted in the Medium bucket");
  gen_cmd->add_option("--hard", gen.hard, "Targets wanted in the Hard bucket");
  gen_cmd->add_option("--max-scenes", gen.max_scenes, "Scene budget when filling buckets")
      ->capture_default_str();
  gen_cmd->add_option("--min-objects", gen.gen.min_objects)->capture_default_str();
  gen_cmd->add_option("--max-objects", gen.gen.max_objects)->capture_default_str();
  gen_cmd->add_option("--width", gen.gen.width)->capture_default_str();
  gen_cmd->add_option("--height", gen.gen.height)->capture_default_str();
  gen_cmd->add_option("--shapes", gen.shapes, "rect or convex")
      ->check(CLI::IsMember({"rect", "convex"}))
      ->capture_default_str();
  gen_cmd->add_option("--overlap-bias", gen.gen.overlap_bias, "0 places objects apart")
      ->capture_default_str();
  gen_cmd->add_option("--prefix", gen.gen.scene_prefix, "Scene id prefix")->capture_default_str();

  BuildGraphsOptions build;
  auto* build_cmd = app.add_subcommand("build-graphs", "Build per-target obstruction graphs");
  build_cmd->add_option("--manifest", build.manifest, "Scene manifest from gen-scenes");
  build_cmd->add_option("--scene", build.scene, "Single scene file");
  build_cmd->add_option("--relations", build.relations, "Hand-written relations document");
  build_cmd->add_option("--target", build.target, "Only this target");
  build_cmd->add_option("--out", build.out, "Graph records file")->capture_default_str();

  SynthVqaOptions synth;
  auto* synth_cmd = app.add_subcommand("synth-vqa", "Synthesize VQA records from graph records");
  synth_cmd->add_option("--graphs", synth.graphs, "Graph records file")->required();
  synth_cmd->add_option("--out", synth.out, "VQA records file")->capture_default_str();
  synth_cmd->add_option("--setting", synth.setting, "som, nlp or both")
      ->check(CLI::IsMember({"som", "nlp", "both"}))
      ->capture_default_str();
  synth.cues.add_to(*synth_cmd);

  RunAgentOptions agent;
  auto* agent_cmd = app.add_subcommand("run-agent", "Produce predictions with a reference agent");
  agent_cmd->add_option("--vqa", agent.vqa, "VQA records file")->required();
  agent_cmd->add_option("--out", agent.out, "Predictions file")->capture_default_str();
  agent_cmd->add_option("--agent", agent.agent, "oracle or corrupted")
      ->check(CLI::IsMember({"oracle", "corrupted"}))
      ->capture_default_str();
  agent_cmd->add_option("--seed", agent.noise.seed, "Noise seed")->capture_default_str();
  agent_cmd->add_option("--p-drop-path", agent.noise.p_drop_path)->capture_default_str();
  agent_cmd->add_option("--p-drop-answer", agent.noise.p_drop_answer)->capture_default_str();
  agent_cmd->add_option("--p-swap", agent.noise.p_swap)->capture_default_str();
  agent_cmd->add_option("--p-break-format", agent.noise.p_break_format)->capture_default_str();
  agent.cues.add_to(*agent_cmd);

  EvaluateOptions eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score predictions against the VQA manifest");
  eval_cmd->add_option("--predictions", eval.predictions, "Predictions file")->required();
  eval_cmd->add_option("--vqa", eval.vqa, "VQA records file")->required();
  eval_cmd->add_option("--out", eval.out, "Report document")->capture_default_str();
  eval_cmd->add_option("--table", eval.table, "Also write the text table here");
  eval_cmd->add_option("--samples", eval.samples, "Per-sample scores file");
  eval_cmd->add_option("--radius", eval.radius, "Mention resolution radius in pixels");

  RewardOptions reward;
  auto* reward_cmd = app.add_subcommand("reward", "Compute rewards for predictions");
  reward_cmd->add_option("--predictions", reward.predictions, "Predictions file")->required();
  reward_cmd->add_option("--vqa", reward.vqa, "VQA records file")->required();
  reward_cmd->add_option("--out", reward.out, "Reward records file")->capture_default_str();
  reward_cmd->add_option("--lambda-fmt", reward.lambda_fmt, "Format reward weight");
  reward_cmd->add_option("--lambda-task", reward.lambda_task, "Task reward weight");

  ReportOptions report;
  auto* report_cmd = app.add_subcommand("report", "Render a report document as a table");
  report_cmd->add_option("--report", report.report, "Report document")->required();
  report_cmd->add_option("--out", report.out, "Also write the table here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  g_verbose = global.verbose;
  try {
    const EvalConfig config = effective_config(global);
    if (*gen_cmd) return cmd_gen_scenes(gen, config);
    if (*build_cmd) return cmd_build_graphs(build, config);
    if (*synth_cmd) return cmd_synth_vqa(synth, config);
    if (*agent_cmd) return cmd_run_agent(agent, config);
    if (*eval_cmd) return cmd_evaluate(eval, config);
    if (*reward_cmd) return cmd_reward(reward, config);
    if (*report_cmd) return cmd_report(report);
  } catch (const Error& e) {
    std::cerr << "unobstruct: error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const fs::filesystem_error& e) {
    std::cerr << "unobstruct: error: " << e.what() << '\n';
    return kExitIo;
  } catch (const json::exception& e) {
    std::cerr << "unobstruct: error: malformed document: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace

int run_cli(int argc, const char* const* argv) { return run(argc, argv); }

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"unobstruct"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace unobstruct

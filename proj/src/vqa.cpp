// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/vqa.hpp"

#include <algorithm>
#include <map>

#include "unobstruct/error.hpp"

namespace unobstruct {

namespace {

const OcclusionRelation* find_relation(const GraphRecord& record, int below, int above) {
  for (const auto& r : record.relations) {
    if (r.below == below && r.above == above) return &r;
  }
  return nullptr;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string coords(Point p) { return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")"; }

// Renders "<below> is obstructed by <above>" plus whichever cues are enabled.
std::string relation_line(const std::string& below, const std::string& above,
                          const OcclusionRelation* relation, const SynthOptions& options) {
  std::vector<std::string> cues;
  std::string degree;
  if (relation && options.degree_word) {
    degree = std::string(to_string(degree_word(relation->ratio, options.degrees)));
  }
  if (options.short_template) {
    if (!degree.empty()) cues.push_back(degree);
    if (relation && options.ratio) cues.push_back(std::to_string(render_ratio_percent(relation->ratio)) + "%");
    if (relation && options.contact_point) cues.push_back("contact " + coords(relation->contact));
    std::string line = below + " obstructed by " + above;
    if (!cues.empty()) line += " (" + join(cues, ", ") + ")";
    return line;
  }
  std::string line = below + " is " + (degree.empty() ? "" : degree + " ") + "obstructed by " + above;
  if (relation && options.ratio) {
    line += " with the occlusion ratio of " + std::to_string(render_ratio_percent(relation->ratio)) + "%";
  }
  if (relation && options.contact_point) line += " at contact point " + coords(relation->contact);
  return line;
}

template <typename Name>
std::vector<std::string> think_lines(const TraceContent& content, const GraphRecord& record,
                                     const SynthOptions& options, Name&& name) {
  std::vector<std::string> lines;
  for (std::size_t k = 0; k < content.paths.size(); ++k) {
    const auto& path = content.paths[k];
    // Deepest first: the target's direct obstructor leads.
    for (std::size_t i = path.size(); i-- > 1;) {
      const int below = path[i], above = path[i - 1];
      lines.push_back("Path" + std::to_string(k + 1) + ": " +
                      relation_line(name(below, true), name(above, false),
                                    find_relation(record, below, above), options));
    }
  }
  return lines;
}

std::string scene_basename(const std::string& scene_id) {
  const auto slash = scene_id.find_last_of('/');
  return slash == std::string::npos ? scene_id : scene_id.substr(slash + 1);
}

}  // namespace

TraceContent ground_truth_content(const GraphRecord& record, Setting setting) {
  TraceContent content{record.target, record.paths, {}};
  if (content.paths.empty()) {
    content.answer = {record.target};
    return content;
  }
  if (setting == Setting::OracleSoM) {
    content.answer = record.top_objects;
    std::sort(content.answer.begin(), content.answer.end());
    return content;
  }
  auto lead_ratio = [&](const ObstructionPath& p) {
    const auto* r = find_relation(record, p.back(), p[p.size() - 2]);
    return r ? r->ratio : 0.0;
  };
  std::stable_sort(content.paths.begin(), content.paths.end(),
                   [&](const auto& a, const auto& b) { return lead_ratio(a) > lead_ratio(b); });
  for (const auto& p : content.paths) {
    if (std::find(content.answer.begin(), content.answer.end(), p.front()) == content.answer.end()) {
      content.answer.push_back(p.front());
    }
  }
  return content;
}

std::string render_som(const TraceContent& content, const GraphRecord& record,
                       const SynthOptions& options) {
  auto name = [](int id, bool subject) {
    return (subject ? "Object " : "object ") + std::to_string(id);
  };
  auto short_name = [](int id, bool) { return std::to_string(id); };
  auto lines = options.short_template ? think_lines(content, record, options, short_name)
                                      : think_lines(content, record, options, name);
  if (content.paths.empty()) {
    lines.push_back("Object " + std::to_string(content.target) + " is not obstructed.");
  }
  std::vector<std::string> ids;
  for (int id : content.answer) ids.push_back(std::to_string(id));
  return "<think>\n" + join(lines, "\n") + "\n</think>\n<answer>[" + join(ids, ", ") + "]</answer>";
}

std::string render_nlp(const TraceContent& content, const GraphRecord& record,
                       const SceneRecord& scene, const SynthOptions& options) {
  auto mention = [&](int id, bool) {
    const auto& o = scene.at(id);
    return o.name + " at " + coords(o.centroid);
  };
  auto lines = think_lines(content, record, options, mention);
  if (content.paths.empty()) lines.push_back(mention(content.target, true) + " is not obstructed.");
  std::vector<std::string> points;
  for (int id : content.answer) {
    const auto& o = scene.at(id);
    points.push_back("<points " + std::to_string(o.centroid.x) + " " + std::to_string(o.centroid.y) +
                     ">" + o.name + "</points>");
  }
  return "<think>" + join(lines, "\n") + "\n</think>\n<answer>[" + join(points, ", ") + "]</answer>";
}

std::string sample_id_for(const GraphRecord& record, Setting setting) {
  return record.scene_id + "/" + record.view_id + "/" + std::to_string(record.target) + "/" +
         std::string(to_string(setting));
}

VqaSample synth_som(const GraphRecord& record, const SynthOptions& options) {
  VqaSample s;
  s.sample_id = sample_id_for(record, Setting::OracleSoM);
  s.setting = Setting::OracleSoM;
  s.image_ref = options.som_image_root + "/" + scene_basename(record.scene_id) + "_" +
                record.view_id + "_labeled.png";
  s.system_prompt = std::string(kSomSystemPrompt);
  s.question = "<image>\nTo grasp object " + std::to_string(record.target) +
               ", which object is on top of it?";
  s.answer_text = render_som(ground_truth_content(record, Setting::OracleSoM), record, options);
  s.difficulty = record.difficulty;
  s.gt = record;
  return s;
}

std::optional<VqaSample> synth_nlp(const GraphRecord& record, const SceneRecord& scene,
                                   const SynthOptions& options) {
  const TargetGraph graph = graph_of(record);
  for (int id : graph.nodes()) {
    if (!scene.at(id).describable()) return std::nullopt;
  }
  VqaSample s;
  s.sample_id = sample_id_for(record, Setting::NLP);
  s.setting = Setting::NLP;
  s.image_ref = options.nlp_image_root + "/" + scene_basename(record.scene_id) + "_view" +
                record.view_id + "_ori.png";
  s.system_prompt = std::string(kNlpSystemPrompt);
  s.question = "<image>\nTo grasp " + scene.at(record.target).name + ", which object is on top of it?";
  s.answer_text = render_nlp(ground_truth_content(record, Setting::NLP), record, scene, options);
  s.difficulty = record.difficulty;
  s.gt = record;
  return s;
}

json vqa_to_json(const VqaSample& s) {
  return {{"schema_version", kSchemaVersion},
          {"sample_id", s.sample_id},
          {"image", s.image_ref},
          {"system", s.system_prompt},
          {"question", s.question},
          {"answer", s.answer_text},
          {"setting", std::string(to_string(s.setting))},
          {"difficulty", std::string(to_string(s.difficulty))},
          {"scene_id", s.gt.scene_id},
          {"view_id", s.gt.view_id},
          {"target", s.gt.target},
          {"gt", graph_record_to_json(s.gt)}};
}

VqaSample vqa_from_json(const json& doc) {
  try {
    VqaSample s;
    s.sample_id = doc.at("sample_id").get<std::string>();
    s.setting = setting_from_string(doc.at("setting").get<std::string>());
    s.image_ref = doc.at("image").get<std::string>();
    s.system_prompt = doc.at("system").get<std::string>();
    s.question = doc.at("question").get<std::string>();
    s.answer_text = doc.at("answer").get<std::string>();
    s.difficulty = difficulty_from_string(doc.at("difficulty").get<std::string>());
    s.gt = graph_record_from_json(doc.at("gt"));
    return s;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("vqa record: ") + e.what());
  }
}

}  // namespace unobstruct

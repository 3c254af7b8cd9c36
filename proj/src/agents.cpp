// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/agents.hpp"

#include <algorithm>
#include <random>

#include "unobstruct/error.hpp"

namespace unobstruct {

namespace {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

void NoiseSpec::validate() const {
  for (double p : {p_drop_path, p_drop_answer, p_swap, p_break_format}) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("noise probabilities must lie in [0, 1]");
  }
}

bool NoiseSpec::is_zero() const {
  return p_drop_path == 0.0 && p_drop_answer == 0.0 && p_swap == 0.0 && p_break_format == 0.0;
}

std::string oracle_predict(const GraphRecord& record, const SceneRecord* scene, Setting setting,
                           const SynthOptions& options) {
  const auto content = ground_truth_content(record, setting);
  if (setting == Setting::OracleSoM) return render_som(content, record, options);
  if (!scene) throw DomainError("natural-language rendering needs the scene");
  return render_nlp(content, record, *scene, options);
}

std::string oracle_predict(const SceneRecord& scene, int target, Setting setting,
                           const OcclusionConfig& occlusion, const SynthOptions& options) {
  const auto relations = build_relations(scene, occlusion);
  return oracle_predict(make_graph_record(scene, relations, target), &scene, setting, options);
}

std::string corrupted_predict(const GraphRecord& record, const SceneRecord& scene, Setting setting,
                              const NoiseSpec& noise, const SynthOptions& options) {
  noise.validate();
  Draws draws(noise.seed ^ fnv1a(sample_id_for(record, setting)));
  const auto ids = scene.ids();
  auto swapped = [&](int id) {
    const double u = draws.uniform();
    const std::uint64_t pick = draws.raw();
    if (u >= noise.p_swap) return id;
    std::vector<int> others;
    for (int other : ids) {
      if (other != id) others.push_back(other);
    }
    return others.empty() ? id : others[pick % others.size()];
  };

  const auto truth = ground_truth_content(record, setting);
  TraceContent content{truth.target, {}, {}};
  for (const auto& path : truth.paths) {
    const bool drop = draws.uniform() < noise.p_drop_path;
    ObstructionPath noisy = path;
    for (std::size_t i = 0; i + 1 < noisy.size(); ++i) noisy[i] = swapped(noisy[i]);
    if (!drop) content.paths.push_back(std::move(noisy));
  }
  for (int id : truth.answer) {
    const bool drop = draws.uniform() < noise.p_drop_answer;
    const int noisy = swapped(id);
    if (!drop) content.answer.push_back(noisy);
  }
  const bool broken = draws.uniform() < noise.p_break_format;

  std::string text = setting == Setting::OracleSoM ? render_som(content, record, options)
                                                   : render_nlp(content, record, scene, options);
  if (broken) {
    const auto pos = text.rfind("</answer>");
    if (pos != std::string::npos) text.erase(pos, std::string_view("</answer>").size());
  }
  return text;
}

}  // namespace unobstruct

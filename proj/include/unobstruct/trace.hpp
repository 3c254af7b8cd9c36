// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unobstruct/graph.hpp"
#include "unobstruct/metrics.hpp"
#include "unobstruct/scene.hpp"
#include "unobstruct/setting.hpp"

namespace unobstruct {

/// "name at (x, y)" or "<points x y>name</points>".
struct Mention {
  std::string name;
  int x = 0;
  int y = 0;
  friend bool operator==(const Mention&, const Mention&) = default;
};

using MentionPath = std::vector<Mention>;  // top-first, target last

struct ParsedTrace {
  Setting setting = Setting::OracleSoM;
  bool format_ok = false;
  // Set-of-mark setting.
  std::vector<ObstructionPath> think_paths;
  std::vector<int> answer_ids;
  // Natural-language setting.
  std::vector<MentionPath> think_mentions;
  std::vector<Mention> answer_mentions;

  std::vector<std::string> diagnostics;  // skipped fragments with reasons
  std::string raw;
};

/// One <think> block followed by one <answer> block, nothing but whitespace
/// around them, and an answer payload in the setting's grammar.
bool check_format(std::string_view text, Setting setting);

/// Never throws on any input text.
ParsedTrace parse_som(std::string_view text);
ParsedTrace parse_nlp(std::string_view text);
ParsedTrace parse_trace(std::string_view text, Setting setting);

enum class ResolutionMethod { InsideModal, NearestCentroid, Unresolved };

struct MentionResolution {
  Mention mention;
  std::optional<int> resolved;
  ResolutionMethod method = ResolutionMethod::Unresolved;
};

inline constexpr double kDefaultResolveRadius = 50.0;

/// Coordinates decide: the unique object whose modal mask holds the point,
/// else the nearest centroid within `radius` pixels, else unresolved.
MentionResolution resolve_mention(const Mention& mention, const SceneRecord& scene,
                                  double radius = kDefaultResolveRadius);
std::vector<MentionResolution> resolve_mentions(std::span<const Mention> mentions,
                                                const SceneRecord& scene,
                                                double radius = kDefaultResolveRadius);

/// Map a parsed trace onto object ids. Natural-language traces need the
/// scene; every unresolved mention becomes its own negative placeholder id.
ResolvedPrediction resolve_prediction(const ParsedTrace& trace, const SceneRecord* scene,
                                      double radius = kDefaultResolveRadius);

}  // namespace unobstruct

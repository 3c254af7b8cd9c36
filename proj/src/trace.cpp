// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <regex>

#include "unobstruct/error.hpp"

namespace unobstruct {

std::string_view to_string(Setting setting) {
  return setting == Setting::OracleSoM ? "som" : "nlp";
}

Setting setting_from_string(std::string_view text) {
  if (text == "som") return Setting::OracleSoM;
  if (text == "nlp") return Setting::NLP;
  throw SchemaError("unknown setting '" + std::string(text) + "' (expected som or nlp)");
}

namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";
constexpr std::string_view kAnswerOpen = "<answer>";
constexpr std::string_view kAnswerClose = "</answer>";

std::size_t count_of(std::string_view text, std::string_view tag) {
  std::size_t n = 0;
  for (auto pos = text.find(tag); pos != std::string_view::npos; pos = text.find(tag, pos + 1)) ++n;
  return n;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Blocks {
  std::string_view think;
  std::string_view answer;
  bool has_think = false;
  bool has_answer = false;
};

// Lenient extraction: an unclosed block runs to the next opening tag or the
// end of the text.
Blocks extract_blocks(std::string_view text) {
  Blocks b;
  const auto t_open = text.find(kThinkOpen);
  const auto a_open = text.find(kAnswerOpen);
  if (t_open != std::string_view::npos) {
    const auto start = t_open + kThinkOpen.size();
    auto end = text.find(kThinkClose, start);
    if (end == std::string_view::npos || (a_open != std::string_view::npos && a_open > start && a_open < end)) {
      end = (a_open != std::string_view::npos && a_open > start) ? a_open : text.size();
    }
    b.think = text.substr(start, end - start);
    b.has_think = true;
  }
  if (a_open != std::string_view::npos) {
    const auto start = a_open + kAnswerOpen.size();
    auto end = text.find(kAnswerClose, start);
    if (end == std::string_view::npos) end = text.size();
    b.answer = text.substr(start, end - start);
    b.has_answer = true;
  }
  return b;
}

const std::regex& som_answer_grammar() {
  static const std::regex re(R"(\s*\[\s*(\d+(\s*,\s*\d+)*)?\s*\]\s*)");
  return re;
}

const std::regex& nlp_answer_grammar() {
  static const std::regex re(
      R"(\s*\[\s*(<points\s+-?\d+\s+-?\d+\s*>[^<]*</points>(\s*,\s*<points\s+-?\d+\s+-?\d+\s*>[^<]*</points>)*)?\s*\]\s*)");
  return re;
}

bool answer_payload_ok(std::string_view payload, Setting setting) {
  const auto& re = setting == Setting::OracleSoM ? som_answer_grammar() : nlp_answer_grammar();
  return std::regex_match(payload.begin(), payload.end(), re);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(start, end - start));
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

const std::regex& path_prefix() {
  static const std::regex re(R"(^path\s*(\d+)\s*:\s*(.*)$)", std::regex::icase);
  return re;
}

const std::regex& som_relation() {
  static const std::regex re(
      R"(^(?:object\s+)?(\d+)\s+(?:is\s+)?(?:(?:slightly|partially|mostly|heavily)\s+)?obstructed\s+by\s+(?:object\s+)?(\d+)\b.*$)",
      std::regex::icase);
  return re;
}

const std::regex& som_free() {
  static const std::regex re(R"(^(?:object\s+)?(\d+)\s+is\s+not\s+obstructed\b.*$)",
                             std::regex::icase);
  return re;
}

const std::regex& nlp_relation() {
  static const std::regex re(
      R"(^(.+?)\s+at\s+\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s+(?:is\s+)?(?:(?:slightly|partially|mostly|heavily)\s+)?obstructed\s+by\s+(.+?)\s+at\s+\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\).*$)",
      std::regex::icase);
  return re;
}

const std::regex& nlp_free() {
  static const std::regex re(R"(^(.+?)\s+at\s+\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s+is\s+not\s+obstructed\b.*$)",
                             std::regex::icase);
  return re;
}

const std::regex& points_element() {
  static const std::regex re(R"(<points\s+(-?\d+)\s+(-?\d+)\s*>([^<]*)</points>)");
  return re;
}

int to_int(const std::string& digits, bool& ok) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(digits, &used);
    if (used != digits.size() || v > std::numeric_limits<int>::max() ||
        v < std::numeric_limits<int>::min()) {
      ok = false;
      return 0;
    }
    return static_cast<int>(v);
  } catch (const std::exception&) {
    ok = false;
    return 0;
  }
}

// Chains "a obstructed by b" relations of one path into a bottom-up sequence.
template <typename Node>
class PathBuilder {
 public:
  // Returns an empty string on success, a reason otherwise.
  std::string add(const Node& below, const Node& above) {
    if (below == above) return "object obstructed by itself";
    if (chain_.empty()) {
      chain_ = {below, above};
      return {};
    }
    const bool known_above = std::find(chain_.begin(), chain_.end(), above) != chain_.end();
    const bool known_below = std::find(chain_.begin(), chain_.end(), below) != chain_.end();
    if (below == chain_.back()) {
      if (known_above) return "relation would revisit an object on this path";
      chain_.push_back(above);
      return {};
    }
    if (above == chain_.front()) {
      if (known_below) return "relation would revisit an object on this path";
      chain_.insert(chain_.begin(), below);
      return {};
    }
    return "relation does not continue its path";
  }

  bool empty() const { return chain_.empty(); }
  std::vector<Node> top_first() const { return {chain_.rbegin(), chain_.rend()}; }

 private:
  std::vector<Node> chain_;
};

struct LineGroups {
  std::vector<std::string> keys;  // in order of first appearance
  std::map<std::string, std::vector<std::string>> lines;
};

// Groups think lines by their "PathK:" label; unlabelled lines join the
// most recent path.
LineGroups group_think_lines(std::string_view think) {
  LineGroups groups;
  std::string current;
  for (auto line : split_lines(think)) {
    std::string body(line);
    std::smatch m;
    const std::string text(line);
    if (std::regex_match(text, m, path_prefix())) {
      current = m[1].str();
      body = m[2].str();
    } else if (current.empty()) {
      current = "1";
    }
    if (!groups.lines.count(current)) groups.keys.push_back(current);
    groups.lines[current].push_back(body);
  }
  return groups;
}

ParsedTrace start_trace(std::string_view text, Setting setting, Blocks& blocks) {
  ParsedTrace trace;
  trace.setting = setting;
  trace.raw = std::string(text);
  trace.format_ok = check_format(text, setting);
  blocks = extract_blocks(text);
  if (!blocks.has_think) trace.diagnostics.push_back("missing <think> block");
  if (!blocks.has_answer) trace.diagnostics.push_back("missing <answer> block");
  return trace;
}

}  // namespace

bool check_format(std::string_view text, Setting setting) {
  if (count_of(text, kThinkOpen) != 1 || count_of(text, kThinkClose) != 1 ||
      count_of(text, kAnswerOpen) != 1 || count_of(text, kAnswerClose) != 1) {
    return false;
  }
  const auto t0 = text.find(kThinkOpen), t1 = text.find(kThinkClose);
  const auto a0 = text.find(kAnswerOpen), a1 = text.find(kAnswerClose);
  if (!(t0 < t1 && t1 < a0 && a0 < a1)) return false;
  if (!blank(text.substr(0, t0)) || !blank(text.substr(t1 + kThinkClose.size(), a0 - t1 - kThinkClose.size())) ||
      !blank(text.substr(a1 + kAnswerClose.size()))) {
    return false;
  }
  const auto payload = text.substr(a0 + kAnswerOpen.size(), a1 - a0 - kAnswerOpen.size());
  return answer_payload_ok(payload, setting);
}

ParsedTrace parse_som(std::string_view text) {
  Blocks blocks;
  ParsedTrace trace = start_trace(text, Setting::OracleSoM, blocks);

  const auto groups = group_think_lines(blocks.think);
  for (const auto& key : groups.keys) {
    PathBuilder<int> builder;
    for (const auto& line : groups.lines.at(key)) {
      std::smatch m;
      if (std::regex_match(line, m, som_free())) continue;
      if (!std::regex_match(line, m, som_relation())) {
        trace.diagnostics.push_back("Path" + key + ": unparseable line: " + line);
        continue;
      }
      bool ok = true;
      const int below = to_int(m[1].str(), ok);
      const int above = to_int(m[2].str(), ok);
      if (!ok) {
        trace.diagnostics.push_back("Path" + key + ": id out of range: " + line);
        continue;
      }
      if (auto why = builder.add(below, above); !why.empty()) {
        trace.diagnostics.push_back("Path" + key + ": " + why + ": " + line);
      }
    }
    if (!builder.empty()) trace.think_paths.push_back(builder.top_first());
  }

  if (blocks.has_answer) {
    static const std::regex number(R"(\d+)");
    const std::string payload(blocks.answer);
    for (auto it = std::sregex_iterator(payload.begin(), payload.end(), number);
         it != std::sregex_iterator(); ++it) {
      bool ok = true;
      const int id = to_int(it->str(), ok);
      if (ok) {
        trace.answer_ids.push_back(id);
      } else {
        trace.diagnostics.push_back("answer id out of range: " + it->str());
      }
    }
    if (!answer_payload_ok(blocks.answer, Setting::OracleSoM)) {
      trace.diagnostics.push_back("answer is not a list of integer ids");
    }
  }
  return trace;
}

ParsedTrace parse_nlp(std::string_view text) {
  Blocks blocks;
  ParsedTrace trace = start_trace(text, Setting::NLP, blocks);

  const auto groups = group_think_lines(blocks.think);
  for (const auto& key : groups.keys) {
    PathBuilder<Mention> builder;
    for (const auto& line : groups.lines.at(key)) {
      std::smatch m;
      if (std::regex_match(line, m, nlp_free())) continue;
      if (!std::regex_match(line, m, nlp_relation())) {
        trace.diagnostics.push_back("Path" + key + ": unparseable line: " + line);
        continue;
      }
      bool ok = true;
      const Mention below{std::string(trim(m[1].str())), to_int(m[2].str(), ok), to_int(m[3].str(), ok)};
      const Mention above{std::string(trim(m[4].str())), to_int(m[5].str(), ok), to_int(m[6].str(), ok)};
      if (!ok) {
        trace.diagnostics.push_back("Path" + key + ": coordinate out of range: " + line);
        continue;
      }
      if (auto why = builder.add(below, above); !why.empty()) {
        trace.diagnostics.push_back("Path" + key + ": " + why + ": " + line);
      }
    }
    if (!builder.empty()) trace.think_mentions.push_back(builder.top_first());
  }

  if (blocks.has_answer) {
    // Well-formed elements are taken; any other non-separator text between
    // them is reported and skipped.
    std::string payload(trim(blocks.answer));
    if (!payload.empty() && payload.front() == '[') payload.erase(0, 1);
    if (!payload.empty() && payload.back() == ']') payload.pop_back();
    auto report_gap = [&](std::string_view gap) {
      std::string rest;
      for (char c : gap) {
        if (c != ',' && !std::isspace(static_cast<unsigned char>(c))) rest += c;
      }
      if (!rest.empty()) {
        trace.diagnostics.push_back("answer: malformed points element: " + std::string(trim(gap)));
      }
    };
    const std::string_view view(payload);
    std::size_t consumed = 0;
    for (std::sregex_iterator it(payload.begin(), payload.end(), points_element()), end; it != end;
         ++it) {
      const auto& m = *it;
      const auto at = static_cast<std::size_t>(m.position(0));
      report_gap(view.substr(consumed, at - consumed));
      consumed = at + static_cast<std::size_t>(m.length(0));
      bool ok = true;
      Mention mention{std::string(trim(m[3].str())), to_int(m[1].str(), ok), to_int(m[2].str(), ok)};
      if (!ok) {
        trace.diagnostics.push_back("answer: coordinate out of range: " + m[0].str());
        continue;
      }
      trace.answer_mentions.push_back(std::move(mention));
    }
    report_gap(view.substr(consumed));
  }
  return trace;
}

ParsedTrace parse_trace(std::string_view text, Setting setting) {
  return setting == Setting::OracleSoM ? parse_som(text) : parse_nlp(text);
}

MentionResolution resolve_mention(const Mention& mention, const SceneRecord& scene, double radius) {
  MentionResolution out{mention, std::nullopt, ResolutionMethod::Unresolved};
  const Point p{mention.x, mention.y};
  const ObjectInstance* inside = nullptr;
  int hits = 0;
  for (const auto& o : scene.objects) {
    if (o.modal.contains(p)) {
      inside = &o;
      ++hits;
    }
  }
  if (hits == 1) {
    out.resolved = inside->id;
    out.method = ResolutionMethod::InsideModal;
    return out;
  }
  const ObjectInstance* nearest = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : scene.objects) {
    const double d = std::hypot(o.centroid.x - p.x, o.centroid.y - p.y);
    if (d < best || (d == best && nearest && o.id < nearest->id)) {
      best = d;
      nearest = &o;
    }
  }
  if (nearest && best <= radius) {
    out.resolved = nearest->id;
    out.method = ResolutionMethod::NearestCentroid;
  }
  return out;
}

std::vector<MentionResolution> resolve_mentions(std::span<const Mention> mentions,
                                                const SceneRecord& scene, double radius) {
  std::vector<MentionResolution> out;
  out.reserve(mentions.size());
  for (const auto& m : mentions) out.push_back(resolve_mention(m, scene, radius));
  return out;
}

ResolvedPrediction resolve_prediction(const ParsedTrace& trace, const SceneRecord* scene,
                                      double radius) {
  ResolvedPrediction out;
  out.format_ok = trace.format_ok;
  if (trace.setting == Setting::OracleSoM) {
    out.answer = trace.answer_ids;
    out.paths = trace.think_paths;
    return out;
  }
  if (!scene) throw DomainError("natural-language traces need a scene to resolve mentions");
  int placeholder = 0;
  auto id_of = [&](const Mention& m) {
    const auto r = resolve_mention(m, *scene, radius);
    return r.resolved ? *r.resolved : --placeholder;
  };
  for (const auto& m : trace.answer_mentions) out.answer.push_back(id_of(m));
  for (const auto& path : trace.think_mentions) {
    ObstructionPath ids;
    for (const auto& m : path) ids.push_back(id_of(m));
    out.paths.push_back(std::move(ids));
  }
  return out;
}

}  // namespace unobstruct

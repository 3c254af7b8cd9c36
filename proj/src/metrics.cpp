// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "unobstruct/error.hpp"

namespace unobstruct {

PrfScores PrfScores::from(double precision, double recall) {
  const double sum = precision + recall;
  return {precision, recall, sum == 0.0 ? 0.0 : 2.0 * precision * recall / sum};
}

std::set<Edge> triplets(std::span<const ObstructionPath> paths) {
  std::set<Edge> out;
  for (const auto& path : paths) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) out.insert({path[i + 1], path[i]});
  }
  return out;
}

std::size_t levenshtein(std::span<const int> a, std::span<const int> b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double ned(std::span<const int> a, std::span<const int> b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

Assignment hungarian(const CostMatrix& cost) {
  Assignment result;
  if (cost.rows() == 0 || cost.cols() == 0) return result;
  for (std::size_t r = 0; r < cost.rows(); ++r) {
    for (std::size_t c = 0; c < cost.cols(); ++c) {
      if (!std::isfinite(cost(r, c)) || cost(r, c) < 0) {
        throw DomainError("assignment costs must be finite and nonnegative");
      }
    }
  }
  // Work on an n x m view with n <= m.
  const bool transposed = cost.rows() > cost.cols();
  const std::size_t n = transposed ? cost.cols() : cost.rows();
  const std::size_t m = transposed ? cost.rows() : cost.cols();
  auto at = [&](std::size_t i, std::size_t j) { return transposed ? cost(j, i) : cost(i, j); };

  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is the virtual source.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> match(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double reduced = at(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = j0;
        }
        if (minv[j] < delta) {  // strict: lowest column wins ties
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (std::size_t j = 1; j <= m; ++j) {
    if (match[j] == 0) continue;
    const std::size_t i = match[j] - 1;
    if (transposed) {
      result.pairs.emplace_back(j - 1, i);
    } else {
      result.pairs.emplace_back(i, j - 1);
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  for (const auto& [r, c] : result.pairs) result.cost += cost(r, c);
  return result;
}

double mp_ned(std::span<const ObstructionPath> pred, std::span<const ObstructionPath> gt) {
  const std::size_t k = std::max(pred.size(), gt.size());
  if (k == 0) return 0.0;
  CostMatrix cost(k, k, kDummyPathCost);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < gt.size(); ++j) cost(i, j) = ned(pred[i], gt[j]);
  }
  // Sum in sorted order so swapping the sides cannot change the rounding.
  std::vector<double> matched;
  for (auto [i, j] : hungarian(cost).pairs) matched.push_back(cost(i, j));
  std::sort(matched.begin(), matched.end());
  double total = 0.0;
  for (double c : matched) total += c;
  return total / static_cast<double>(k);
}

GroundTruth ground_truth_of(const GraphRecord& record) {
  return {record.target, record.top_objects, record.paths, record.difficulty};
}

SampleReport evaluate_sample(const ResolvedPrediction& prediction, const GroundTruth& gt,
                             std::string sample_id) {
  SampleReport report;
  report.sample_id = std::move(sample_id);
  report.difficulty = gt.difficulty;
  report.format_ok = prediction.format_ok;
  if (!prediction.format_ok) return report;  // zero credit, mp_ned stays 1

  const std::set<int> gt_answer = gt.paths.empty()
                                      ? std::set<int>{gt.target}
                                      : std::set<int>(gt.top_objects.begin(), gt.top_objects.end());
  report.sr = set_prf(std::set<int>(prediction.answer.begin(), prediction.answer.end()), gt_answer);

  const auto pred_edges = triplets(prediction.paths);
  const auto gt_edges = triplets(gt.paths);
  // An unobstructed target predicted as unobstructed has nothing to get wrong.
  report.triplet = pred_edges.empty() && gt_edges.empty() ? PrfScores{1.0, 1.0, 1.0}
                                                          : set_prf(pred_edges, gt_edges);
  report.mp_ned = mp_ned(prediction.paths, gt.paths);
  return report;
}

namespace {

struct Accumulator {
  std::size_t count = 0;
  double sr_p = 0, sr_r = 0, sr_f1 = 0, op = 0, orr = 0, f1_rel = 0, mp_ned = 0, format = 0;

  void add(const SampleReport& s) {
    ++count;
    sr_p += s.sr.precision;
    sr_r += s.sr.recall;
    sr_f1 += s.sr.f1;
    op += s.triplet.precision;
    orr += s.triplet.recall;
    f1_rel += s.triplet.f1;
    mp_ned += s.mp_ned;
    format += s.format_ok ? 1.0 : 0.0;
  }

  StratumMeans means() const {
    StratumMeans m;
    m.count = count;
    if (count == 0) return m;
    const double n = static_cast<double>(count);
    m.sr_p = sr_p / n;
    m.sr_r = sr_r / n;
    m.sr_f1 = sr_f1 / n;
    m.op = op / n;
    m.orr = orr / n;
    m.f1_rel = f1_rel / n;
    m.mp_ned = mp_ned / n;
    m.format_rate = format / n;
    return m;
  }
};

json stratum_to_json(const StratumMeans& m) {
  auto value = [&](double x) { return m.count == 0 ? json(nullptr) : json(x); };
  return {{"count", m.count},       {"sr_p", value(m.sr_p)}, {"sr_r", value(m.sr_r)},
          {"sr_f1", value(m.sr_f1)}, {"op", value(m.op)},     {"or", value(m.orr)},
          {"f1_rel", value(m.f1_rel)}, {"mp_ned", value(m.mp_ned)},
          {"format_rate", value(m.format_rate)}};
}

StratumMeans stratum_from_json(const json& doc) {
  auto value = [&](const char* key) {
    const auto& v = doc.at(key);
    return v.is_null() ? 0.0 : v.get<double>();
  };
  StratumMeans m;
  m.count = doc.at("count").get<std::size_t>();
  m.sr_p = value("sr_p");
  m.sr_r = value("sr_r");
  m.sr_f1 = value("sr_f1");
  m.op = value("op");
  m.orr = value("or");
  m.f1_rel = value("f1_rel");
  m.mp_ned = value("mp_ned");
  m.format_rate = value("format_rate");
  return m;
}

}  // namespace

StratifiedReport aggregate(std::span<const SampleReport> samples) {
  std::map<Difficulty, Accumulator> acc;
  for (auto d : kAllDifficulties) acc[d];
  Accumulator overall;
  for (const auto& s : samples) {
    acc[s.difficulty].add(s);
    overall.add(s);
  }
  StratifiedReport report;
  for (const auto& [d, a] : acc) report.strata[d] = a.means();
  report.overall = overall.means();
  return report;
}

json report_to_json(const StratifiedReport& report) {
  json strata = json::object();
  for (const auto& [d, m] : report.strata) strata[std::string(to_string(d))] = stratum_to_json(m);
  return {{"schema_version", kSchemaVersion},
          {"notes",
           "mp_ned is 1.0 for predictions with an empty <think> section against obstructed "
           "targets; format failures score zero on every metric with mp_ned 1.0"},
          {"strata", std::move(strata)},
          {"overall", stratum_to_json(report.overall)}};
}

StratifiedReport report_from_json(const json& doc) {
  try {
    StratifiedReport report;
    for (auto d : kAllDifficulties) {
      report.strata[d] = stratum_from_json(doc.at("strata").at(std::string(to_string(d))));
    }
    report.overall = stratum_from_json(doc.at("overall"));
    return report;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report document: ") + e.what());
  }
}

std::string report_table(const StratifiedReport& report) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %6s %6s %6s %6s %6s %6s %6s %7s %7s\n", "stratum", "count",
                "SR-P", "SR-R", "SR-F1", "OP", "OR", "F1rel", "MP_NED", "format");
  out << line;
  auto row = [&](std::string_view name, const StratumMeans& m) {
    if (m.count == 0) {
      std::snprintf(line, sizeof line, "%-8.*s %6zu %6s %6s %6s %6s %6s %6s %7s %7s\n",
                    static_cast<int>(name.size()), name.data(), m.count, "-", "-", "-", "-", "-",
                    "-", "-", "-");
    } else {
      std::snprintf(line, sizeof line,
                    "%-8.*s %6zu %6.3f %6.3f %6.3f %6.3f %6.3f %6.3f %7.4f %7.4f\n",
                    static_cast<int>(name.size()), name.data(), m.count, m.sr_p, m.sr_r, m.sr_f1,
                    m.op, m.orr, m.f1_rel, m.mp_ned, m.format_rate);
    }
    out << line;
  };
  for (const auto& [d, m] : report.strata) row(to_string(d), m);
  row("Overall", report.overall);
  return out.str();
}

json sample_report_to_json(const SampleReport& s) {
  return {{"sample_id", s.sample_id},
          {"difficulty", std::string(to_string(s.difficulty))},
          {"format_ok", s.format_ok},
          {"sr_p", s.sr.precision},
          {"sr_r", s.sr.recall},
          {"sr_f1", s.sr.f1},
          {"op", s.triplet.precision},
          {"or", s.triplet.recall},
          {"f1_rel", s.triplet.f1},
          {"mp_ned", s.mp_ned}};
}

}  // namespace unobstruct

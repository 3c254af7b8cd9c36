// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/config.hpp"

#include <cstdlib>
#include <fstream>

#include "unobstruct/error.hpp"

namespace unobstruct {

EvalConfig config_from_json(const json& doc, EvalConfig cfg) {
  if (!doc.is_object()) throw SchemaError("config document is not an object");
  try {
    if (doc.contains("occlusion")) {
      const auto& o = doc.at("occlusion");
      cfg.occlusion.min_ratio = o.value("min_ratio", cfg.occlusion.min_ratio);
      cfg.occlusion.max_ratio = o.value("max_ratio", cfg.occlusion.max_ratio);
      if (o.contains("obstructor_area")) {
        const auto area = o.at("obstructor_area").get<std::string>();
        if (area == "modal") {
          cfg.occlusion.obstructor_area = ObstructorArea::Modal;
        } else if (area == "amodal") {
          cfg.occlusion.obstructor_area = ObstructorArea::Amodal;
        } else {
          throw SchemaError("config: obstructor_area must be 'modal' or 'amodal'");
        }
      }
      if (o.contains("degrees")) {
        const auto& d = o.at("degrees");
        auto& t = cfg.occlusion.degrees;
        t.partially = d.value("partially", t.partially);
        t.mostly = d.value("mostly", t.mostly);
        t.heavily = d.value("heavily", t.heavily);
      }
    }
    cfg.resolve_radius = doc.value("resolve_radius", cfg.resolve_radius);
    if (doc.contains("rewards")) {
      const auto& r = doc.at("rewards");
      cfg.rewards.lambda_fmt = r.value("lambda_fmt", cfg.rewards.lambda_fmt);
      cfg.rewards.lambda_task = r.value("lambda_task", cfg.rewards.lambda_task);
    }
    cfg.path_cap = doc.value("path_cap", cfg.path_cap);
    cfg.jobs = doc.value("jobs", cfg.jobs);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("config: ") + e.what());
  }
  const auto& t = cfg.occlusion.degrees;
  if (!(0.0 < t.partially && t.partially < t.mostly && t.mostly < t.heavily && t.heavily < 1.0)) {
    throw ValidationError("config: degree thresholds must increase strictly inside (0, 1)");
  }
  if (!(0.0 <= cfg.occlusion.min_ratio && cfg.occlusion.min_ratio <= cfg.occlusion.max_ratio &&
        cfg.occlusion.max_ratio <= 1.0)) {
    throw ValidationError("config: ratio band must satisfy 0 <= min_ratio <= max_ratio <= 1");
  }
  if (cfg.resolve_radius < 0) throw ValidationError("config: resolve_radius must be nonnegative");
  if (cfg.path_cap == 0) throw ValidationError("config: path_cap must be positive");
  cfg.rewards.validate();
  return cfg;
}

EvalConfig load_config(const std::filesystem::path& path, EvalConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  try {
    return config_from_json(json::parse(in), std::move(base));
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

EvalConfig default_config() {
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return load_config(env);
  return {};
}

}  // namespace unobstruct

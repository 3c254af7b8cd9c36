// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/occlusion.hpp"

#include <cmath>
#include <string>

#include "unobstruct/error.hpp"

namespace unobstruct {

std::string_view to_string(Degree degree) {
  switch (degree) {
    case Degree::Slightly: return "slightly";
    case Degree::Partially: return "partially";
    case Degree::Mostly: return "mostly";
    case Degree::Heavily: return "heavily";
  }
  return "slightly";
}

std::optional<OcclusionRelation> pairwise_occlusion(const ObjectInstance& lower,
                                                    const ObjectInstance& upper,
                                                    const OcclusionConfig& config) {
  if (!lower.amodal.same_shape(upper.modal) || !lower.amodal.same_shape(upper.amodal)) {
    throw GeometryError("objects " + std::to_string(lower.id) + " and " + std::to_string(upper.id) +
                        " have masks of different dimensions");
  }
  if (lower.z_rank >= upper.z_rank) {
    throw DomainError("object " + std::to_string(upper.id) + " is not above object " +
                      std::to_string(lower.id));
  }
  const Mask& cover = config.obstructor_area == ObstructorArea::Modal ? upper.modal : upper.amodal;
  const Mask overlap = lower.amodal & cover;
  const std::size_t hidden = overlap.count();
  const std::size_t area = lower.amodal.count();
  if (hidden == 0 || area == 0) return std::nullopt;

  const double ratio = static_cast<double>(hidden) / static_cast<double>(area);
  if (ratio < config.min_ratio || ratio > config.max_ratio) return std::nullopt;
  return OcclusionRelation{
      .below = lower.id,
      .above = upper.id,
      .ratio = ratio,
      .contact = *overlap.representative_point(),
      .degree = degree_word(ratio, config.degrees),
  };
}

Degree degree_word(double ratio, const DegreeThresholds& t) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw DomainError("obstruction ratio " + std::to_string(ratio) + " outside (0, 1)");
  }
  if (ratio < t.partially) return Degree::Slightly;
  if (ratio < t.mostly) return Degree::Partially;
  if (ratio < t.heavily) return Degree::Mostly;
  return Degree::Heavily;
}

int render_ratio_percent(double ratio) {
  // Strip binary representation noise first so 0.045 renders as 5, not 4.
  const double percent = std::round(ratio * 1e8) / 1e6;
  return static_cast<int>(round_half_away(percent));
}

json relation_to_json(const OcclusionRelation& r) {
  return {{"obj1", r.above},
          {"obj2", r.below},
          {"relation", std::to_string(r.above) + " occludes " + std::to_string(r.below)},
          {"mask_ratio", std::round(r.ratio * 1e4) / 1e4},
          {"point", {{"x", r.contact.x}, {"y", r.contact.y}}}};
}

OcclusionRelation relation_from_json(const json& doc, const DegreeThresholds& thresholds) {
  try {
    OcclusionRelation r;
    r.above = doc.at("obj1").get<int>();
    r.below = doc.at("obj2").get<int>();
    r.ratio = doc.at("mask_ratio").get<double>();
    r.contact = {doc.at("point").at("x").get<int>(), doc.at("point").at("y").get<int>()};
    if (r.above == r.below) {
      throw ValidationError("relation record: object " + std::to_string(r.above) +
                            " cannot occlude itself");
    }
    r.degree = degree_word(r.ratio, thresholds);
    return r;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("relation record: ") + e.what());
  } catch (const DomainError& e) {
    throw ValidationError(std::string("relation record: ") + e.what());
  }
}

}  // namespace unobstruct

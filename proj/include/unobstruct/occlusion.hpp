// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>

#include "unobstruct/scene.hpp"

namespace unobstruct {

enum class Degree { Slightly, Partially, Mostly, Heavily };

std::string_view to_string(Degree degree);

/// Lower-inclusive cut points between the four degree words.
struct DegreeThresholds {
  double partially = 0.25;
  double mostly = 0.50;
  double heavily = 0.75;
};

/// Which part of the obstructor counts when measuring how much of the
/// obstructed object it hides.
enum class ObstructorArea { Modal, Amodal };

struct OcclusionConfig {
  double min_ratio = 0.01;
  double max_ratio = 0.95;
  DegreeThresholds degrees;
  ObstructorArea obstructor_area = ObstructorArea::Modal;
};

/// `below` is obstructed by `above`.
struct OcclusionRelation {
  int below = 0;
  int above = 0;
  double ratio = 0.0;  // share of below's amodal area hidden by above
  Point contact;
  Degree degree = Degree::Slightly;

  friend bool operator==(const OcclusionRelation&, const OcclusionRelation&) = default;
};

/// Occlusion of `lower` by `upper`. Requires lower.z_rank < upper.z_rank.
/// Empty when the masks do not meet or the ratio falls outside the retained
/// band. Throws GeometryError on mismatched mask dimensions.
std::optional<OcclusionRelation> pairwise_occlusion(const ObjectInstance& lower,
                                                    const ObjectInstance& upper,
                                                    const OcclusionConfig& config = {});

/// Throws DomainError unless 0 < ratio < 1.
Degree degree_word(double ratio, const DegreeThresholds& thresholds = {});

/// round(ratio * 100), half away from zero.
int render_ratio_percent(double ratio);

/// {obj1, obj2, relation, mask_ratio, point}; obj1 is the obstructor.
json relation_to_json(const OcclusionRelation& relation);
OcclusionRelation relation_from_json(const json& doc, const DegreeThresholds& thresholds = {});

}  // namespace unobstruct

// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace unobstruct {

/// Integer pixel coordinate. Origin top-left, x rightward, y downward.
struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Fixed-size binary occupancy grid, row-major, packed 64 pixels per word.
///
/// Run-length encoding convention (used on disk):
///   The grid is flattened row-major (index = y * width + x). The encoding is
///   a list of run lengths alternating between runs of 0-pixels and runs of
///   1-pixels, always starting with a 0-run (which may have length 0). The
///   runs sum to width * height. The encoder never emits zero-length runs
///   except for a leading 0-run when pixel 0 is set.
class Mask {
 public:
  Mask(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return static_cast<std::size_t>(width_) * height_; }

  bool test(int x, int y) const;
  void set(int x, int y, bool value = true);
  bool contains(Point p) const;

  /// Set every pixel of the axis-aligned rectangle [x0, x1] x [y0, y1]
  /// (inclusive, clipped to the grid).
  void fill_rect(int x0, int y0, int x1, int y1);

  std::size_t count() const;
  bool none() const;

  bool same_shape(const Mask& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  /// Popcount of (*this & other). Shapes must match.
  std::size_t intersection_count(const Mask& other) const;
  bool is_subset_of(const Mask& other) const;

  Mask operator&(const Mask& other) const;
  Mask operator|(const Mask& other) const;
  /// *this & ~other
  Mask minus(const Mask& other) const;

  /// Mean pixel position of the set pixels; empty when no pixel is set.
  std::optional<std::pair<double, double>> mean_position() const;
  /// Rounded mean position, snapped to the nearest set pixel when the rounded
  /// point falls outside the set (non-convex shapes).
  std::optional<Point> representative_point() const;

  std::vector<std::uint32_t> to_rle() const;
  /// Throws ValidationError when the runs do not cover exactly width*height.
  static Mask from_rle(int width, int height, std::span<const std::uint32_t> runs);

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  void require_same_shape(const Mask& other) const;
  void set_range(std::size_t begin, std::size_t end);
  template <typename Fn>
  void for_each_set(Fn&& fn) const;

  int width_;
  int height_;
  std::vector<std::uint64_t> words_;
};

/// Round half away from zero.
long long round_half_away(double value);

}  // namespace unobstruct

// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include "unobstruct/mask.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "unobstruct/error.hpp"

namespace unobstruct {

namespace {
constexpr std::size_t kWordBits = 64;
}

long long round_half_away(double value) {
  return static_cast<long long>(value < 0 ? std::ceil(value - 0.5) : std::floor(value + 0.5));
}

Mask::Mask(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw GeometryError("mask dimensions must be positive, got " + std::to_string(width) + "x" +
                        std::to_string(height));
  }
  words_.assign((size() + kWordBits - 1) / kWordBits, 0);
}

bool Mask::test(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return false;
  const std::size_t i = static_cast<std::size_t>(y) * width_ + x;
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

bool Mask::contains(Point p) const { return test(p.x, p.y); }

void Mask::set(int x, int y, bool value) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) {
    throw GeometryError("pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                        ") outside mask");
  }
  const std::size_t i = static_cast<std::size_t>(y) * width_ + x;
  const std::uint64_t bit = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= bit;
  } else {
    words_[i / kWordBits] &= ~bit;
  }
}

void Mask::fill_rect(int x0, int y0, int x1, int y1) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, width_ - 1);
  y1 = std::min(y1, height_ - 1);
  if (x0 > x1) return;
  for (int y = y0; y <= y1; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * width_;
    set_range(row + x0, row + x1 + 1);
  }
}

std::size_t Mask::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool Mask::none() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

void Mask::require_same_shape(const Mask& other) const {
  if (!same_shape(other)) {
    throw GeometryError("mask dimensions differ: " + std::to_string(width_) + "x" +
                        std::to_string(height_) + " vs " + std::to_string(other.width_) + "x" +
                        std::to_string(other.height_));
  }
}

std::size_t Mask::intersection_count(const Mask& other) const {
  require_same_shape(other);
  std::size_t n = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) n += std::popcount(words_[i] & other.words_[i]);
  return n;
}

bool Mask::is_subset_of(const Mask& other) const {
  require_same_shape(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

Mask Mask::operator&(const Mask& other) const {
  require_same_shape(other);
  Mask out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= other.words_[i];
  return out;
}

Mask Mask::operator|(const Mask& other) const {
  require_same_shape(other);
  Mask out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= other.words_[i];
  return out;
}

Mask Mask::minus(const Mask& other) const {
  require_same_shape(other);
  Mask out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= ~other.words_[i];
  return out;
}

template <typename Fn>
void Mask::for_each_set(Fn&& fn) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      const std::size_t i = w * kWordBits + std::countr_zero(bits);
      fn(static_cast<int>(i % width_), static_cast<int>(i / width_));
      bits &= bits - 1;
    }
  }
}

std::optional<std::pair<double, double>> Mask::mean_position() const {
  double sx = 0, sy = 0;
  std::size_t n = 0;
  for_each_set([&](int x, int y) {
    sx += x;
    sy += y;
    ++n;
  });
  if (n == 0) return std::nullopt;
  return std::pair{sx / n, sy / n};
}

std::optional<Point> Mask::representative_point() const {
  const auto mean = mean_position();
  if (!mean) return std::nullopt;
  Point p{static_cast<int>(round_half_away(mean->first)),
          static_cast<int>(round_half_away(mean->second))};
  if (contains(p)) return p;
  // Nearest set pixel; ties resolved by row-major order.
  long long best = std::numeric_limits<long long>::max();
  Point snapped = p;
  for_each_set([&](int x, int y) {
    const long long dx = x - p.x, dy = y - p.y;
    const long long d = dx * dx + dy * dy;
    if (d < best) {
      best = d;
      snapped = {x, y};
    }
  });
  return snapped;
}

std::vector<std::uint32_t> Mask::to_rle() const {
  std::vector<std::uint32_t> runs;
  bool current = false;
  std::uint32_t length = 0;
  const std::size_t n = size();
  std::size_t i = 0;
  while (i < n) {
    const std::uint64_t word = words_[i / kWordBits];
    const std::uint64_t uniform = current ? ~std::uint64_t{0} : 0;
    if (i % kWordBits == 0 && i + kWordBits <= n && word == uniform) {
      length += kWordBits;
      i += kWordBits;
      continue;
    }
    const bool bit = (word >> (i % kWordBits)) & 1u;
    if (bit != current) {
      runs.push_back(length);
      current = bit;
      length = 0;
    }
    ++length;
    ++i;
  }
  runs.push_back(length);
  return runs;
}

void Mask::set_range(std::size_t begin, std::size_t end) {
  while (begin < end) {
    const std::size_t offset = begin % kWordBits;
    const std::size_t take = std::min(kWordBits - offset, end - begin);
    const std::uint64_t bits =
        take == kWordBits ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1) << offset;
    words_[begin / kWordBits] |= bits;
    begin += take;
  }
}

Mask Mask::from_rle(int width, int height, std::span<const std::uint32_t> runs) {
  Mask mask(width, height);
  std::size_t pos = 0;
  bool value = false;
  for (auto run : runs) {
    if (pos + run > mask.size()) {
      throw ValidationError("RLE runs exceed mask size " + std::to_string(mask.size()));
    }
    if (value) mask.set_range(pos, pos + run);
    pos += run;
    value = !value;
  }
  if (pos != mask.size()) {
    throw ValidationError("RLE runs cover " + std::to_string(pos) + " pixels, expected " +
                          std::to_string(mask.size()));
  }
  return mask;
}

}  // namespace unobstruct

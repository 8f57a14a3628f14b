/*
 * Copyright 2026 The AddressEngine Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "addrengine/channels.hpp"
#include "addrengine/frame.hpp"
#include "addrengine/indexed_table.hpp"
#include "addrengine/kernels.hpp"

namespace ae {

enum class AddressingMode { inter, intra, segment };

std::string_view mode_name(AddressingMode m) noexcept;

enum class ScanOrder {
  horizontal,  // rows top to bottom, left to right within a row
  vertical,    // columns left to right, top to bottom within a column
};

std::string_view scan_name(ScanOrder s) noexcept;

struct Offset {
  int dy = 0;
  int dx = 0;

  friend bool operator==(const Offset&, const Offset&) = default;
  friend auto operator<=>(const Offset&, const Offset&) = default;
};

/// Largest neighborhood extent, in lines, the line buffers can serve in one
/// fetch. Spans are measured including the center pixel.
inline constexpr int kMaxMaskSpan = 9;

class NeighborhoodMask {
 public:
  enum class Name { con0, con8, custom };

  static NeighborhoodMask con0();
  static NeighborhoodMask con8();
  /// `lines` pixels in one column centered on the pixel (a 9-line column is
  /// the largest fetch perpendicular to a horizontal scan).
  static NeighborhoodMask column(int lines);
  /// Throws Error(mask_span) when either extent exceeds kMaxMaskSpan, and
  /// Error(invalid_argument) for empty or duplicated offsets.
  static NeighborhoodMask custom(std::vector<Offset> offsets);
  /// "con0", "con8", or "dy:dx,dy:dx,...".
  static NeighborhoodMask parse(std::string_view text);

  Name name() const noexcept { return name_; }
  std::string label() const;
  const std::vector<Offset>& offsets() const noexcept { return offsets_; }
  std::size_t size() const noexcept { return offsets_.size(); }

  // Bounding box, always including the center (0,0).
  int min_dy() const noexcept { return min_dy_; }
  int max_dy() const noexcept { return max_dy_; }
  int min_dx() const noexcept { return min_dx_; }
  int max_dx() const noexcept { return max_dx_; }
  int vertical_span() const noexcept { return max_dy_ - min_dy_ + 1; }
  int horizontal_span() const noexcept { return max_dx_ - min_dx_ + 1; }

  /// Offsets that enter the window when the center advances one pixel
  /// along the scan.
  int new_pixels_per_step(ScanOrder scan) const;

  friend bool operator==(const NeighborhoodMask&, const NeighborhoodMask&) = default;

 private:
  NeighborhoodMask(Name name, std::vector<Offset> offsets);

  Name name_ = Name::custom;
  std::vector<Offset> offsets_;
  int min_dy_ = 0, max_dy_ = 0, min_dx_ = 0, max_dx_ = 0;
};

/// Criteria for admitting a neighbor during segment expansion: the largest
/// absolute difference to the expanding pixel over `channels` must not
/// exceed `threshold`.
struct SegmentCriteria {
  ChannelSet channels{Channel::y};
  std::uint32_t threshold = 0;
  std::vector<Coord> seeds;

  bool admits(const Pixel& from, const Pixel& to) const noexcept;
};

struct ScanOutput {
  Frame frame;
  SadAccumulator sad;
  IndexedTable table;
};

struct SegmentOutput {
  Frame frame;
  std::vector<Coord> visit_order;
  IndexedTable table;
};

/// Gathers the clamped neighborhood of (x, y) in mask order.
void gather_neighborhood(const Frame& src, const NeighborhoodMask& mask, int x, int y,
                         std::vector<Pixel>& out);

/// Visits every position of a width x height frame in scan order.
template <typename F>
void for_each_in_scan(int width, int height, ScanOrder scan, F&& f) {
  if (scan == ScanOrder::horizontal) {
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) f(x, y);
  } else {
    for (int x = 0; x < width; ++x)
      for (int y = 0; y < height; ++y) f(x, y);
  }
}

ScanOutput intra_scan(const Frame& src, const NeighborhoodMask& mask, ScanOrder scan,
                      const Kernel& k);

ScanOutput inter_scan(const Frame& a, const Frame& b, const Kernel& k,
                      ScanOrder scan = ScanOrder::horizontal);

/// Breadth-first expansion from the seeds. Each dequeued pixel is processed
/// as in intra_scan; its unvisited mask neighbors that pass `crit` are
/// enqueued in offset order (dy, then dx ascending). Pixels never reached
/// keep their source value.
SegmentOutput segment_scan(const Frame& src, const SegmentCriteria& crit,
                           const NeighborhoodMask& mask, const Kernel& k);

}  // namespace ae

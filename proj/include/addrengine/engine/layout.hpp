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
#include <span>
#include <string_view>
#include <vector>

#include "addrengine/addresslib.hpp"
#include "addrengine/frame.hpp"

namespace ae::engine {

inline constexpr int kBankCount = 6;
inline constexpr std::uint32_t kBankWords = 262'144;  // 1 MB of 32-bit words
inline constexpr int kStripLines = 16;
inline constexpr int kIimLines = 16;
inline constexpr int kInterFifoLines = 8;
inline constexpr int kMaxInputSlots = 2;

// Banks 0/1 hold input slot 0 (lower/upper), 2/3 input slot 1, and the two
// result blocks live in banks 4 and 5.
inline constexpr int kResultBankA = 4;
inline constexpr int kResultBankB = 5;

/// Frame coordinates as seen by the scan: a "line" is a row for horizontal
/// scans and a column for vertical scans; `pos` runs along the line.
struct ScanGeometry {
  int width = 0;
  int height = 0;
  ScanOrder scan = ScanOrder::horizontal;

  int lines() const noexcept { return scan == ScanOrder::horizontal ? height : width; }
  int line_length() const noexcept { return scan == ScanOrder::horizontal ? width : height; }
  std::uint64_t pixel_count() const noexcept {
    return static_cast<std::uint64_t>(width < 0 ? 0 : width) *
           static_cast<std::uint64_t>(height < 0 ? 0 : height);
  }
  Coord to_xy(int line, int pos) const noexcept {
    return scan == ScanOrder::horizontal ? Coord{pos, line} : Coord{line, pos};
  }
  /// Mask offset (dy, dx) expressed as (line delta, pos delta).
  Offset to_line_pos(const Offset& o) const noexcept {
    return scan == ScanOrder::horizontal ? o : Offset{o.dx, o.dy};
  }
};

struct InputAddress {
  int bank_lower = 0;
  int bank_upper = 0;
  std::uint32_t word = 0;

  friend bool operator==(const InputAddress&, const InputAddress&) = default;
};

/// Both halves of a pixel sit at the same word address of a bank pair, so
/// one memory cycle reads the whole pixel. Throws Error(out_of_range).
InputAddress map_input_address(int x, int y, int slot, int width, int height);

enum class Block { a, b };
std::string_view block_name(Block b) noexcept;

struct Strip {
  int index = 0;
  int first_line = 0;
  int lines = kStripLines;
  Block block = Block::a;
};

/// Splits the frame into 16-line strips along the scan, alternating target
/// blocks A/B. Throws Error(non_divisible) when the line count is not a
/// multiple of 16.
std::vector<Strip> plan_strips(int width, int height, ScanOrder scan);

enum class InterTransfer {
  interleaved,  // a0 b0 a1 b1 ...; processing follows the strips
  sequential,   // all of a, then all of b; processing waits for both
};

std::string_view inter_transfer_name(InterTransfer t) noexcept;

struct StripTransfer {
  int slot = 0;
  Strip strip;
  std::uint64_t first_cycle = 0;     // bus cycle of the strip's first word
  std::uint64_t complete_cycle = 0;  // bus cycle of its last word
  std::uint64_t words = 0;
};

struct TransferSchedule {
  std::vector<StripTransfer> strips;
  std::uint64_t total_words = 0;
};

/// Throws Error(layout_overflow) when `slots` inputs plus one result image
/// of this size do not fit the banks.
void check_layout(int width, int height, int slots);

/// Host-to-board schedule at one 32-bit word per bus cycle from cycle 0.
/// Each pixel is two words (lower, upper).
TransferSchedule run_transfer_in(int width, int height, int slots, ScanOrder scan,
                                 InterTransfer order);
TransferSchedule run_transfer_in(std::span<const Frame* const> frames, ScanOrder scan,
                                 InterTransfer order);

}  // namespace ae::engine

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

#include "addrengine/engine/layout.hpp"

#include <string>

#include "addrengine/errors.hpp"

namespace ae::engine {

InputAddress map_input_address(int x, int y, int slot, int width, int height) {
  if (slot < 0 || slot >= kMaxInputSlots) {
    throw_error(ErrorCode::out_of_range, "input slot " + std::to_string(slot) + " does not exist");
  }
  if (x < 0 || y < 0 || x >= width || y >= height) {
    throw_error(ErrorCode::out_of_range, "pixel (" + std::to_string(x) + "," +
                                             std::to_string(y) + ") is outside the frame");
  }
  const std::uint64_t word =
      static_cast<std::uint64_t>(y) * static_cast<std::uint64_t>(width) +
      static_cast<std::uint64_t>(x);
  if (word >= kBankWords) {
    throw_error(ErrorCode::layout_overflow, "input address exceeds bank capacity");
  }
  return InputAddress{2 * slot, 2 * slot + 1, static_cast<std::uint32_t>(word)};
}

std::string_view block_name(Block b) noexcept { return b == Block::a ? "A" : "B"; }

std::vector<Strip> plan_strips(int width, int height, ScanOrder scan) {
  const ScanGeometry geo{width, height, scan};
  const int lines = geo.lines();
  if (lines < 0 || lines % kStripLines != 0) {
    throw_error(ErrorCode::non_divisible,
                std::string(scan == ScanOrder::horizontal ? "height " : "width ") +
                    std::to_string(lines) + " is not a multiple of " +
                    std::to_string(kStripLines));
  }
  std::vector<Strip> strips;
  for (int i = 0; i * kStripLines < lines; ++i) {
    strips.push_back({i, i * kStripLines, kStripLines, (i % 2 == 0) ? Block::a : Block::b});
  }
  return strips;
}

std::string_view inter_transfer_name(InterTransfer t) noexcept {
  return t == InterTransfer::interleaved ? "interleaved" : "sequential";
}

void check_layout(int width, int height, int slots) {
  if (slots < 1 || slots > kMaxInputSlots) {
    throw_error(ErrorCode::invalid_argument, "between one and two input images are supported");
  }
  const std::uint64_t pixels = ScanGeometry{width, height}.pixel_count();
  // Inputs: one word per pixel in each bank of the slot pair. Result: two
  // sequential words per pixel in a single bank.
  if (pixels > kBankWords || 2 * pixels > kBankWords) {
    throw_error(ErrorCode::layout_overflow,
                std::to_string(width) + "x" + std::to_string(height) +
                    " frames do not fit the 6-bank layout (max " +
                    std::to_string(kBankWords / 2) + " pixels per image)");
  }
}

TransferSchedule run_transfer_in(int width, int height, int slots, ScanOrder scan,
                                 InterTransfer order) {
  check_layout(width, height, slots);
  const std::vector<Strip> strips = plan_strips(width, height, scan);
  const ScanGeometry geo{width, height, scan};

  TransferSchedule sched;
  auto append = [&](int slot, const Strip& s) {
    StripTransfer t;
    t.slot = slot;
    t.strip = s;
    t.words = 2ull * static_cast<std::uint64_t>(s.lines) *
              static_cast<std::uint64_t>(geo.line_length());
    t.first_cycle = sched.total_words;
    sched.total_words += t.words;
    t.complete_cycle = sched.total_words - 1;
    if (t.words > 0) sched.strips.push_back(t);
  };

  if (slots == 1 || order == InterTransfer::interleaved) {
    for (const Strip& s : strips)
      for (int slot = 0; slot < slots; ++slot) append(slot, s);
  } else {
    for (int slot = 0; slot < slots; ++slot)
      for (const Strip& s : strips) append(slot, s);
  }
  return sched;
}

TransferSchedule run_transfer_in(std::span<const Frame* const> frames, ScanOrder scan,
                                 InterTransfer order) {
  if (frames.empty() || frames.size() > kMaxInputSlots) {
    throw_error(ErrorCode::invalid_argument, "between one and two input images are supported");
  }
  for (const Frame* f : frames) {
    if (f == nullptr || !f->same_size(*frames[0])) {
      throw_error(ErrorCode::dimension_mismatch, "input frames must share one size");
    }
  }
  return run_transfer_in(frames[0]->width(), frames[0]->height(),
                         static_cast<int>(frames.size()), scan, order);
}

}  // namespace ae::engine

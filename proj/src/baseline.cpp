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

#include "addrengine/baseline.hpp"

#include "addrengine/errors.hpp"

namespace ae::baseline {

namespace {

std::uint64_t pixels(int width, int height) {
  if (width <= 0 || height <= 0) return 0;
  return static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height);
}

}  // namespace

std::uint64_t software_reads_per_pixel(AddressingMode mode, const NeighborhoodMask& mask,
                                       ScanOrder scan) {
  switch (mode) {
    case AddressingMode::inter:
      return 2;  // one pixel from each frame
    case AddressingMode::intra:
    case AddressingMode::segment:
      return static_cast<std::uint64_t>(mask.new_pixels_per_step(scan));
  }
  return 0;
}

std::uint64_t count_software_accesses(AddressingMode mode, const NeighborhoodMask& mask,
                                      ChannelSet in_channels, ChannelSet out_channels,
                                      int width, int height, ScanOrder scan) {
  (void)in_channels;
  const std::uint64_t per_pixel =
      software_reads_per_pixel(mode, mask, scan) + static_cast<std::uint64_t>(out_channels.size());
  return per_pixel * pixels(width, height);
}

std::uint64_t count_hardware_accesses(AddressingMode mode, const NeighborhoodMask& mask,
                                      ChannelSet channels, int width, int height) {
  (void)mode;
  (void)mask;
  (void)channels;
  return 2 * pixels(width, height);
}

Saving saving(std::uint64_t sw, std::uint64_t hw) {
  if (hw == 0) throw_error(ErrorCode::zero_hardware, "hardware access count is zero");
  const double diff = static_cast<double>(sw) - static_cast<double>(hw);
  Saving s;
  s.relative_to_software = sw == 0 ? 0.0 : 100.0 * diff / static_cast<double>(sw);
  s.relative_to_hardware = 100.0 * diff / static_cast<double>(hw);
  return s;
}

std::vector<AccessRow> reference_rows() {
  const ChannelSet y{Channel::y};
  return {
      {"Inter Y->Y", AddressingMode::inter, NeighborhoodMask::con0(), y, y},
      {"Intra CON_0 Y->Y", AddressingMode::intra, NeighborhoodMask::con0(), y, y},
      {"Intra CON_8 Y->Y", AddressingMode::intra, NeighborhoodMask::con8(), y, y},
      {"Intra CON_8 YUV->YUV", AddressingMode::intra, NeighborhoodMask::con8(),
       ChannelSet::yuv(), ChannelSet::yuv()},
  };
}

}  // namespace ae::baseline

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
#include <vector>

#include "addrengine/addresslib.hpp"
#include "addrengine/channels.hpp"

namespace ae::baseline {

// Software convention: every scan step reads the neighborhood pixels that
// newly enter the sliding window (one event per pixel, all channels), and
// writes one event per output channel.
std::uint64_t software_reads_per_pixel(AddressingMode mode, const NeighborhoodMask& mask,
                                       ScanOrder scan = ScanOrder::horizontal);

std::uint64_t count_software_accesses(AddressingMode mode, const NeighborhoodMask& mask,
                                      ChannelSet in_channels, ChannelSet out_channels,
                                      int width, int height,
                                      ScanOrder scan = ScanOrder::horizontal);

// Engine convention: one parallel neighborhood read event plus one result
// write event per output pixel, independent of mask and channels.
std::uint64_t count_hardware_accesses(AddressingMode mode, const NeighborhoodMask& mask,
                                      ChannelSet channels, int width, int height);

struct Saving {
  double relative_to_software = 0.0;  // percent, (sw - hw) / sw
  double relative_to_hardware = 0.0;  // percent, (sw - hw) / hw
};

/// Throws Error(zero_hardware) when hw == 0.
Saving saving(std::uint64_t sw, std::uint64_t hw);

struct AccessRow {
  std::string label;
  AddressingMode mode;
  NeighborhoodMask mask;
  ChannelSet in_channels;
  ChannelSet out_channels;
};

/// The four reference configurations: inter Y, intra CON_0 Y, intra CON_8 Y,
/// intra CON_8 YUV.
std::vector<AccessRow> reference_rows();

}  // namespace ae::baseline

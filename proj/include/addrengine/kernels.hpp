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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "addrengine/channels.hpp"
#include "addrengine/frame.hpp"

namespace ae {

class NeighborhoodMask;

enum class KernelOp {
  identity,
  diff,            // two-frame |a - b|
  sad_accumulate,  // two-frame |a - b| plus running SAD
  morph_gradient,  // dilation - erosion over the mask
  fir,             // weighted sum over the mask
  histogram,       // per-segment count / channel sums keyed by Alfa
  homogeneity,     // all mask neighbors within threshold of the center
};

std::string_view kernel_op_name(KernelOp op) noexcept;
std::optional<KernelOp> parse_kernel_op(std::string_view name) noexcept;

/// True for ops that read two frames at the same position.
bool is_two_frame_op(KernelOp op) noexcept;
/// True for ops that contribute to the segment-indexed table.
bool uses_indexed_table(KernelOp op) noexcept;

struct Kernel {
  KernelOp op = KernelOp::identity;
  ChannelSet in_channels{Channel::y};
  ChannelSet out_channels{Channel::y};
  // FIR weights, one per mask offset in mask order.
  std::vector<double> coeffs;
  // Homogeneity threshold, in channel units.
  std::uint32_t threshold = 0;

  static Kernel identity(ChannelSet ch = {Channel::y});
  static Kernel diff(ChannelSet ch = {Channel::y});
  static Kernel sad(ChannelSet ch = {Channel::y});
  static Kernel morph_gradient(ChannelSet ch = {Channel::y});
  static Kernel fir(std::vector<double> coeffs, ChannelSet ch = {Channel::y});
  static Kernel histogram(ChannelSet ch = {Channel::y});
  static Kernel homogeneity(std::uint32_t threshold, ChannelSet out = {Channel::y});
};

/// Checks the descriptor against the mask it will run with. Throws
/// Error(invalid_argument) on a bad descriptor.
void validate_kernel(const Kernel& k, const NeighborhoodMask& mask);

struct SadAccumulator {
  std::uint32_t value = 0;
  bool saturated = false;

  friend bool operator==(const SadAccumulator&, const SadAccumulator&) = default;
};

struct TableContribution {
  std::uint16_t id = 0;
  std::uint64_t sum_y = 0;
  std::uint64_t sum_u = 0;
  std::uint64_t sum_v = 0;
};

struct KernelResult {
  Pixel out;
  std::optional<std::uint32_t> sad_term;
  std::optional<TableContribution> table;
};

// Channel-wise primitives. Channels outside `channels` keep the center
// (first-frame) value.
KernelResult k_diff(const Pixel& a, const Pixel& b, ChannelSet channels) noexcept;
SadAccumulator k_sad_accumulate(const Pixel& a, const Pixel& b, ChannelSet channels,
                                SadAccumulator running) noexcept;
std::uint32_t sad_term(const Pixel& a, const Pixel& b, ChannelSet channels) noexcept;
SadAccumulator sad_add(SadAccumulator running, std::uint32_t term) noexcept;
KernelResult k_morph_gradient(std::span<const Pixel> neigh, const Pixel& center,
                              ChannelSet channels);
KernelResult k_fir(std::span<const Pixel> neigh, std::span<const double> coeffs,
                   const Pixel& center, ChannelSet channels);
bool k_homogeneity(const Pixel& center, const Pixel& neighbor,
                   std::uint32_t threshold) noexcept;
TableContribution k_histogram(const Pixel& center, ChannelSet channels) noexcept;

/// Round half away from zero, then clamp to [0, max].
std::uint32_t round_clamp(double value, std::uint32_t max) noexcept;

/// Single-frame dispatch. `neigh` is in mask order.
KernelResult apply_intra(const Kernel& k, std::span<const Pixel> neigh,
                         const Pixel& center);
/// Two-frame dispatch; `a` is the center of the first frame.
KernelResult apply_inter(const Kernel& k, const Pixel& a, const Pixel& b);

}  // namespace ae

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

#include "addrengine/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "addrengine/addresslib.hpp"
#include "addrengine/errors.hpp"

namespace ae {

std::string_view kernel_op_name(KernelOp op) noexcept {
  switch (op) {
    case KernelOp::identity: return "identity";
    case KernelOp::diff: return "diff";
    case KernelOp::sad_accumulate: return "sad";
    case KernelOp::morph_gradient: return "morph_gradient";
    case KernelOp::fir: return "fir";
    case KernelOp::histogram: return "histogram";
    case KernelOp::homogeneity: return "homogeneity";
  }
  return "?";
}

std::optional<KernelOp> parse_kernel_op(std::string_view name) noexcept {
  if (name == "identity") return KernelOp::identity;
  if (name == "diff") return KernelOp::diff;
  if (name == "sad" || name == "sad_accumulate") return KernelOp::sad_accumulate;
  if (name == "morph_gradient" || name == "gradient") return KernelOp::morph_gradient;
  if (name == "fir") return KernelOp::fir;
  if (name == "histogram") return KernelOp::histogram;
  if (name == "homogeneity") return KernelOp::homogeneity;
  return std::nullopt;
}

bool is_two_frame_op(KernelOp op) noexcept {
  return op == KernelOp::diff || op == KernelOp::sad_accumulate;
}

bool uses_indexed_table(KernelOp op) noexcept { return op == KernelOp::histogram; }

Kernel Kernel::identity(ChannelSet ch) { return {KernelOp::identity, ch, ch, {}, 0}; }
Kernel Kernel::diff(ChannelSet ch) { return {KernelOp::diff, ch, ch, {}, 0}; }
Kernel Kernel::sad(ChannelSet ch) { return {KernelOp::sad_accumulate, ch, ch, {}, 0}; }
Kernel Kernel::morph_gradient(ChannelSet ch) {
  return {KernelOp::morph_gradient, ch, ch, {}, 0};
}
Kernel Kernel::fir(std::vector<double> coeffs, ChannelSet ch) {
  return {KernelOp::fir, ch, ch, std::move(coeffs), 0};
}
Kernel Kernel::histogram(ChannelSet ch) { return {KernelOp::histogram, ch, {}, {}, 0}; }
Kernel Kernel::homogeneity(std::uint32_t threshold, ChannelSet out) {
  return {KernelOp::homogeneity, ChannelSet::yuv(), out, {}, threshold};
}

void validate_kernel(const Kernel& k, const NeighborhoodMask& mask) {
  switch (k.op) {
    case KernelOp::identity:
    case KernelOp::homogeneity:
      break;
    case KernelOp::diff:
    case KernelOp::morph_gradient:
    case KernelOp::fir:
      if (k.out_channels.empty()) {
        throw_error(ErrorCode::invalid_argument,
                    std::string(kernel_op_name(k.op)) + " needs at least one output channel");
      }
      [[fallthrough]];
    case KernelOp::sad_accumulate:
      if (!k.out_channels.subset_of(k.in_channels)) {
        throw_error(ErrorCode::invalid_argument,
                    std::string(kernel_op_name(k.op)) +
                        " computes channel-wise; output channels must be input channels");
      }
      break;
    case KernelOp::histogram:
      break;
  }
  if (k.op == KernelOp::fir) {
    if (k.coeffs.size() != mask.size()) {
      throw_error(ErrorCode::invalid_argument,
                  "FIR coefficient count " + std::to_string(k.coeffs.size()) +
                      " does not match mask size " + std::to_string(mask.size()));
    }
    for (double c : k.coeffs) {
      if (!std::isfinite(c)) throw_error(ErrorCode::invalid_argument, "non-finite FIR coefficient");
    }
  }
}

namespace {

std::uint32_t abs_diff(std::uint32_t a, std::uint32_t b) noexcept {
  return a > b ? a - b : b - a;
}

}  // namespace

KernelResult k_diff(const Pixel& a, const Pixel& b, ChannelSet channels) noexcept {
  KernelResult r;
  r.out = a;
  for (Channel c : kAllChannels) {
    if (!channels.contains(c)) continue;
    // Absolute difference of two in-range values never exceeds the channel
    // maximum, so saturation is implicit.
    set_channel(r.out, c, abs_diff(channel_value(a, c), channel_value(b, c)));
  }
  return r;
}

std::uint32_t sad_term(const Pixel& a, const Pixel& b, ChannelSet channels) noexcept {
  std::uint32_t sum = 0;
  for (Channel c : kAllChannels) {
    if (channels.contains(c)) sum += abs_diff(channel_value(a, c), channel_value(b, c));
  }
  return sum;
}

SadAccumulator sad_add(SadAccumulator running, std::uint32_t term) noexcept {
  constexpr std::uint32_t kMax = std::numeric_limits<std::uint32_t>::max();
  if (running.value > kMax - term) {
    running.value = kMax;
    running.saturated = true;
  } else {
    running.value += term;
  }
  return running;
}

SadAccumulator k_sad_accumulate(const Pixel& a, const Pixel& b, ChannelSet channels,
                                SadAccumulator running) noexcept {
  return sad_add(running, sad_term(a, b, channels));
}

KernelResult k_morph_gradient(std::span<const Pixel> neigh, const Pixel& center,
                              ChannelSet channels) {
  if (neigh.empty()) {
    throw_error(ErrorCode::invalid_argument, "morphological gradient of an empty neighborhood");
  }
  KernelResult r;
  r.out = center;
  for (Channel c : kAllChannels) {
    if (!channels.contains(c)) continue;
    std::uint32_t lo = channel_value(neigh[0], c);
    std::uint32_t hi = lo;
    for (const Pixel& p : neigh.subspan(1)) {
      const std::uint32_t v = channel_value(p, c);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    set_channel(r.out, c, hi - lo);
  }
  return r;
}

std::uint32_t round_clamp(double value, std::uint32_t max) noexcept {
  // std::round rounds halfway cases away from zero.
  const double r = std::round(value);
  if (r <= 0.0) return 0;
  if (r >= static_cast<double>(max)) return max;
  return static_cast<std::uint32_t>(r);
}

KernelResult k_fir(std::span<const Pixel> neigh, std::span<const double> coeffs,
                   const Pixel& center, ChannelSet channels) {
  if (neigh.size() != coeffs.size()) {
    throw_error(ErrorCode::invalid_argument, "FIR coefficient count does not match neighborhood");
  }
  KernelResult r;
  r.out = center;
  for (Channel c : kAllChannels) {
    if (!channels.contains(c)) continue;
    double acc = 0.0;
    for (std::size_t i = 0; i < neigh.size(); ++i) {
      acc += coeffs[i] * static_cast<double>(channel_value(neigh[i], c));
    }
    set_channel(r.out, c, round_clamp(acc, channel_max(c)));
  }
  return r;
}

bool k_homogeneity(const Pixel& center, const Pixel& neighbor,
                   std::uint32_t threshold) noexcept {
  const std::uint32_t d = std::max({abs_diff(center.y, neighbor.y),
                                    abs_diff(center.u, neighbor.u),
                                    abs_diff(center.v, neighbor.v)});
  return d <= threshold;
}

TableContribution k_histogram(const Pixel& center, ChannelSet channels) noexcept {
  TableContribution t;
  t.id = center.alfa;
  if (channels.contains(Channel::y)) t.sum_y = center.y;
  if (channels.contains(Channel::u)) t.sum_u = center.u;
  if (channels.contains(Channel::v)) t.sum_v = center.v;
  return t;
}

KernelResult apply_intra(const Kernel& k, std::span<const Pixel> neigh,
                         const Pixel& center) {
  switch (k.op) {
    case KernelOp::identity:
      return KernelResult{center, std::nullopt, std::nullopt};
    case KernelOp::morph_gradient:
      return k_morph_gradient(neigh, center, k.out_channels);
    case KernelOp::fir:
      return k_fir(neigh, k.coeffs, center, k.out_channels);
    case KernelOp::homogeneity: {
      const bool uniform = std::all_of(neigh.begin(), neigh.end(), [&](const Pixel& p) {
        return k_homogeneity(center, p, k.threshold);
      });
      KernelResult r{center, std::nullopt, std::nullopt};
      for (Channel c : kAllChannels) {
        if (k.out_channels.contains(c)) set_channel(r.out, c, uniform ? channel_max(c) : 0);
      }
      return r;
    }
    case KernelOp::histogram:
      return KernelResult{center, std::nullopt, k_histogram(center, k.in_channels)};
    case KernelOp::diff:
    case KernelOp::sad_accumulate:
      break;
  }
  throw_error(ErrorCode::unsupported_mode,
              std::string(kernel_op_name(k.op)) + " needs two input frames");
}

KernelResult apply_inter(const Kernel& k, const Pixel& a, const Pixel& b) {
  switch (k.op) {
    case KernelOp::identity:
      return KernelResult{a, std::nullopt, std::nullopt};
    case KernelOp::diff:
      return k_diff(a, b, k.out_channels);
    case KernelOp::sad_accumulate: {
      KernelResult r = k_diff(a, b, k.out_channels);
      r.sad_term = sad_term(a, b, k.in_channels);
      return r;
    }
    default:
      break;
  }
  throw_error(ErrorCode::unsupported_mode,
              std::string(kernel_op_name(k.op)) + " is not a two-frame operation");
}

}  // namespace ae

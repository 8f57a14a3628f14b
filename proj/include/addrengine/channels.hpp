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

#include "addrengine/frame.hpp"

namespace ae {

enum class Channel : std::uint8_t {
  y = 1u << 0,
  u = 1u << 1,
  v = 1u << 2,
  alfa = 1u << 3,
  aux = 1u << 4,
};

inline constexpr Channel kAllChannels[] = {Channel::y, Channel::u, Channel::v,
                                           Channel::alfa, Channel::aux};

class ChannelSet {
 public:
  constexpr ChannelSet() = default;
  constexpr ChannelSet(std::initializer_list<Channel> channels) {
    for (Channel c : channels) bits_ |= static_cast<std::uint8_t>(c);
  }
  static constexpr ChannelSet from_bits(std::uint32_t bits) {
    ChannelSet s;
    s.bits_ = static_cast<std::uint8_t>(bits & 0x1F);
    return s;
  }
  static constexpr ChannelSet yuv() { return {Channel::y, Channel::u, Channel::v}; }

  constexpr bool contains(Channel c) const {
    return (bits_ & static_cast<std::uint8_t>(c)) != 0;
  }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool subset_of(ChannelSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr std::uint32_t bits() const { return bits_; }
  int size() const;

  friend constexpr bool operator==(ChannelSet, ChannelSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

std::uint32_t channel_value(const Pixel& p, Channel c) noexcept;
void set_channel(Pixel& p, Channel c, std::uint32_t value) noexcept;
std::uint32_t channel_max(Channel c) noexcept;

std::string_view channel_name(Channel c) noexcept;
/// Parses "Y,U,V" style lists (case-insensitive; "Alfa"/"Aux" by name).
ChannelSet parse_channels(std::string_view text);
std::string format_channels(ChannelSet s);

}  // namespace ae

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

#include "addrengine/channels.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "addrengine/errors.hpp"

namespace ae {

int ChannelSet::size() const { return std::popcount(bits_); }

std::uint32_t channel_value(const Pixel& p, Channel c) noexcept {
  switch (c) {
    case Channel::y: return p.y;
    case Channel::u: return p.u;
    case Channel::v: return p.v;
    case Channel::alfa: return p.alfa;
    case Channel::aux: return p.aux;
  }
  return 0;
}

void set_channel(Pixel& p, Channel c, std::uint32_t value) noexcept {
  switch (c) {
    case Channel::y: p.y = static_cast<std::uint8_t>(value); break;
    case Channel::u: p.u = static_cast<std::uint8_t>(value); break;
    case Channel::v: p.v = static_cast<std::uint8_t>(value); break;
    case Channel::alfa: p.alfa = static_cast<std::uint16_t>(value); break;
    case Channel::aux: p.aux = static_cast<std::uint16_t>(value); break;
  }
}

std::uint32_t channel_max(Channel c) noexcept {
  return (c == Channel::alfa || c == Channel::aux) ? 0xFFFFu : 0xFFu;
}

std::string_view channel_name(Channel c) noexcept {
  switch (c) {
    case Channel::y: return "Y";
    case Channel::u: return "U";
    case Channel::v: return "V";
    case Channel::alfa: return "Alfa";
    case Channel::aux: return "Aux";
  }
  return "?";
}

ChannelSet parse_channels(std::string_view text) {
  ChannelSet out;
  std::uint32_t bits = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string tok(text.substr(pos, end - pos));
    tok.erase(std::remove_if(tok.begin(), tok.end(),
                             [](unsigned char ch) { return std::isspace(ch); }),
              tok.end());
    std::transform(tok.begin(), tok.end(), tok.begin(),
                   [](unsigned char ch) { return std::tolower(ch); });
    if (tok == "y") bits |= static_cast<std::uint32_t>(Channel::y);
    else if (tok == "u") bits |= static_cast<std::uint32_t>(Channel::u);
    else if (tok == "v") bits |= static_cast<std::uint32_t>(Channel::v);
    else if (tok == "alfa" || tok == "alpha" || tok == "a")
      bits |= static_cast<std::uint32_t>(Channel::alfa);
    else if (tok == "aux") bits |= static_cast<std::uint32_t>(Channel::aux);
    else if (tok == "yuv") bits |= ChannelSet::yuv().bits();
    else if (!tok.empty())
      throw_error(ErrorCode::invalid_argument, "unknown channel '" + tok + "'");
    pos = end + 1;
  }
  return ChannelSet::from_bits(bits);
}

std::string format_channels(ChannelSet s) {
  std::string out;
  for (Channel c : kAllChannels) {
    if (!s.contains(c)) continue;
    if (!out.empty()) out += ',';
    out += channel_name(c);
  }
  return out;
}

}  // namespace ae

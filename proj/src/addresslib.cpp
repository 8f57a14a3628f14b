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

#include "addrengine/addresslib.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>

#include "addrengine/errors.hpp"

namespace ae {

std::string_view mode_name(AddressingMode m) noexcept {
  switch (m) {
    case AddressingMode::inter: return "inter";
    case AddressingMode::intra: return "intra";
    case AddressingMode::segment: return "segment";
  }
  return "?";
}

std::string_view scan_name(ScanOrder s) noexcept {
  return s == ScanOrder::horizontal ? "horizontal" : "vertical";
}

NeighborhoodMask::NeighborhoodMask(Name name, std::vector<Offset> offsets)
    : name_(name), offsets_(std::move(offsets)) {
  if (offsets_.empty()) throw_error(ErrorCode::invalid_argument, "empty neighborhood mask");
  std::set<Offset> seen;
  for (const Offset& o : offsets_) {
    if (!seen.insert(o).second) {
      throw_error(ErrorCode::invalid_argument, "duplicate mask offset (" +
                                                   std::to_string(o.dy) + "," +
                                                   std::to_string(o.dx) + ")");
    }
    min_dy_ = std::min(min_dy_, o.dy);
    max_dy_ = std::max(max_dy_, o.dy);
    min_dx_ = std::min(min_dx_, o.dx);
    max_dx_ = std::max(max_dx_, o.dx);
  }
  if (vertical_span() > kMaxMaskSpan || horizontal_span() > kMaxMaskSpan) {
    std::ostringstream msg;
    msg << "mask spans " << vertical_span() << "x" << horizontal_span()
        << " (with center); the limit is " << kMaxMaskSpan << " lines";
    throw_error(ErrorCode::mask_span, msg.str());
  }
}

NeighborhoodMask NeighborhoodMask::con0() { return NeighborhoodMask(Name::con0, {{0, 0}}); }

NeighborhoodMask NeighborhoodMask::con8() {
  std::vector<Offset> o;
  for (int dy = -1; dy <= 1; ++dy)
    for (int dx = -1; dx <= 1; ++dx) o.push_back({dy, dx});
  return NeighborhoodMask(Name::con8, std::move(o));
}

NeighborhoodMask NeighborhoodMask::column(int lines) {
  if (lines < 1) throw_error(ErrorCode::invalid_argument, "column mask needs at least one line");
  std::vector<Offset> o;
  const int top = -(lines - 1) / 2;
  for (int i = 0; i < lines; ++i) o.push_back({top + i, 0});
  return NeighborhoodMask(Name::custom, std::move(o));
}

NeighborhoodMask NeighborhoodMask::custom(std::vector<Offset> offsets) {
  return NeighborhoodMask(Name::custom, std::move(offsets));
}

NeighborhoodMask NeighborhoodMask::parse(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "con0" || lower == "con_0") return con0();
  if (lower == "con8" || lower == "con_8") return con8();

  std::vector<Offset> offsets;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    const std::size_t colon = item.find(':');
    Offset o;
    auto parse_int = [&](std::string_view s, int& v) {
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      return ec == std::errc{} && p == s.data() + s.size();
    };
    if (colon == std::string_view::npos || !parse_int(item.substr(0, colon), o.dy) ||
        !parse_int(item.substr(colon + 1), o.dx)) {
      throw_error(ErrorCode::invalid_argument,
                  "bad mask offset '" + std::string(item) + "', expected dy:dx");
    }
    offsets.push_back(o);
    pos = end + 1;
  }
  return custom(std::move(offsets));
}

std::string NeighborhoodMask::label() const {
  switch (name_) {
    case Name::con0: return "CON_0";
    case Name::con8: return "CON_8";
    case Name::custom: break;
  }
  std::string out;
  for (const Offset& o : offsets_) {
    if (!out.empty()) out += ',';
    out += std::to_string(o.dy) + ":" + std::to_string(o.dx);
  }
  return out;
}

int NeighborhoodMask::new_pixels_per_step(ScanOrder scan) const {
  std::set<Offset> present(offsets_.begin(), offsets_.end());
  int fresh = 0;
  for (const Offset& o : offsets_) {
    const Offset prev = scan == ScanOrder::horizontal ? Offset{o.dy, o.dx + 1}
                                                      : Offset{o.dy + 1, o.dx};
    if (!present.contains(prev)) ++fresh;
  }
  return fresh;
}

bool SegmentCriteria::admits(const Pixel& from, const Pixel& to) const noexcept {
  for (Channel c : kAllChannels) {
    if (!channels.contains(c)) continue;
    const std::uint32_t a = channel_value(from, c);
    const std::uint32_t b = channel_value(to, c);
    if ((a > b ? a - b : b - a) > threshold) return false;
  }
  return true;
}

void gather_neighborhood(const Frame& src, const NeighborhoodMask& mask, int x, int y,
                         std::vector<Pixel>& out) {
  out.clear();
  for (const Offset& o : mask.offsets()) out.push_back(src.clamped(x + o.dx, y + o.dy));
}

namespace {

void apply_side(const KernelResult& r, SadAccumulator& sad, IndexedTable& table) {
  if (r.sad_term) sad = sad_add(sad, *r.sad_term);
  if (r.table) table.accumulate(*r.table);
}

}  // namespace

ScanOutput intra_scan(const Frame& src, const NeighborhoodMask& mask, ScanOrder scan,
                      const Kernel& k) {
  validate_kernel(k, mask);
  if (is_two_frame_op(k.op)) {
    throw_error(ErrorCode::unsupported_mode,
                std::string(kernel_op_name(k.op)) + " needs inter addressing");
  }
  ScanOutput out{Frame(src.width(), src.height()), {}, {}};
  std::vector<Pixel> neigh;
  neigh.reserve(mask.size());
  for_each_in_scan(src.width(), src.height(), scan, [&](int x, int y) {
    gather_neighborhood(src, mask, x, y, neigh);
    KernelResult r = apply_intra(k, neigh, src.at(x, y));
    out.frame.at(x, y) = r.out;
    apply_side(r, out.sad, out.table);
  });
  return out;
}

ScanOutput inter_scan(const Frame& a, const Frame& b, const Kernel& k, ScanOrder scan) {
  if (!a.same_size(b)) {
    throw_error(ErrorCode::dimension_mismatch,
                "inter addressing needs equal frame sizes, got " + std::to_string(a.width()) +
                    "x" + std::to_string(a.height()) + " and " + std::to_string(b.width()) +
                    "x" + std::to_string(b.height()));
  }
  validate_kernel(k, NeighborhoodMask::con0());
  ScanOutput out{Frame(a.width(), a.height()), {}, {}};
  for_each_in_scan(a.width(), a.height(), scan, [&](int x, int y) {
    KernelResult r = apply_inter(k, a.at(x, y), b.at(x, y));
    out.frame.at(x, y) = r.out;
    apply_side(r, out.sad, out.table);
  });
  return out;
}

SegmentOutput segment_scan(const Frame& src, const SegmentCriteria& crit,
                           const NeighborhoodMask& mask, const Kernel& k) {
  if (crit.seeds.empty()) throw_error(ErrorCode::empty_seeds, "segment scan needs a seed");
  for (const Coord& s : crit.seeds) {
    if (!src.contains(s.x, s.y)) {
      throw_error(ErrorCode::seed_outside, "seed (" + std::to_string(s.x) + "," +
                                               std::to_string(s.y) + ") is outside the frame");
    }
  }
  validate_kernel(k, mask);
  if (is_two_frame_op(k.op)) {
    throw_error(ErrorCode::unsupported_mode,
                std::string(kernel_op_name(k.op)) + " needs inter addressing");
  }

  std::vector<Offset> adjacency;
  for (const Offset& o : mask.offsets()) {
    if (o != Offset{0, 0}) adjacency.push_back(o);
  }
  std::sort(adjacency.begin(), adjacency.end());

  SegmentOutput out{src, {}, {}};
  std::vector<char> visited(src.pixel_count(), 0);
  auto index = [&](int x, int y) {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(src.width()) +
           static_cast<std::size_t>(x);
  };

  std::deque<Coord> queue;
  for (const Coord& s : crit.seeds) {
    if (visited[index(s.x, s.y)]) continue;
    visited[index(s.x, s.y)] = 1;
    queue.push_back(s);
  }

  // Criteria read the source frame only, so testing at enqueue time is
  // equivalent to testing at dequeue time.
  std::vector<Pixel> neigh;
  neigh.reserve(mask.size());
  SadAccumulator unused_sad;
  while (!queue.empty()) {
    const Coord p = queue.front();
    queue.pop_front();
    gather_neighborhood(src, mask, p.x, p.y, neigh);
    KernelResult r = apply_intra(k, neigh, src.at(p.x, p.y));
    out.frame.at(p.x, p.y) = r.out;
    apply_side(r, unused_sad, out.table);
    out.visit_order.push_back(p);

    for (const Offset& o : adjacency) {
      const int qx = p.x + o.dx;
      const int qy = p.y + o.dy;
      if (!src.contains(qx, qy) || visited[index(qx, qy)]) continue;
      if (!crit.admits(src.at(p.x, p.y), src.at(qx, qy))) continue;
      visited[index(qx, qy)] = 1;
      queue.push_back({qx, qy});
    }
  }
  return out;
}

}  // namespace ae

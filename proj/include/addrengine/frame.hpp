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
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace ae {

/// One video pixel: full-resolution Y,U,V plus two 16-bit side channels
/// (Alfa usually carries a segment id).
struct Pixel {
  std::uint8_t y = 0;
  std::uint8_t u = 0;
  std::uint8_t v = 0;
  std::uint16_t alfa = 0;
  std::uint16_t aux = 0;

  friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// The two 32-bit memory words a pixel occupies.
///   lower: Y bits 0-7, U bits 8-15, V bits 16-23, bits 24-31 zero
///   upper: Alfa bits 0-15, Aux bits 16-31
struct WordPair {
  std::uint32_t lower = 0;
  std::uint32_t upper = 0;

  friend bool operator==(const WordPair&, const WordPair&) = default;
};

inline constexpr std::uint32_t kLowerPaddingMask = 0xFF000000u;

WordPair pack_pixel(const Pixel& p) noexcept;

/// Throws Error(malformed_word) when the padding byte of `lower` is nonzero.
Pixel unpack_pixel(const WordPair& w);

enum class FrameTag { qcif, cif, custom };

struct Coord {
  int x = 0;
  int y = 0;

  friend bool operator==(const Coord&, const Coord&) = default;
};

class Frame {
 public:
  static constexpr int kQcifWidth = 176;
  static constexpr int kQcifHeight = 144;
  static constexpr int kCifWidth = 352;
  static constexpr int kCifHeight = 288;

  Frame() = default;
  Frame(int width, int height);
  Frame(int width, int height, std::vector<Pixel> data);

  static Frame qcif() { return Frame(kQcifWidth, kQcifHeight); }
  static Frame cif() { return Frame(kCifWidth, kCifHeight); }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return data_.size(); }
  FrameTag tag() const noexcept;

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  const Pixel& at(int x, int y) const { return data_[index(x, y)]; }
  Pixel& at(int x, int y) { return data_[index(x, y)]; }

  // Border-replicating access.
  const Pixel& clamped(int x, int y) const noexcept;

  std::span<const Pixel> pixels() const noexcept { return data_; }
  std::span<Pixel> pixels() noexcept { return data_; }

  bool same_size(const Frame& o) const noexcept {
    return width_ == o.width_ && height_ == o.height_;
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Pixel> data_;
};

inline constexpr std::uint64_t kBytesPerPixel = 8;

std::uint64_t frame_byte_size(int width, int height) noexcept;
inline std::uint64_t frame_byte_size(const Frame& f) noexcept {
  return frame_byte_size(f.width(), f.height());
}

enum class FrameFormat {
  raw_planar,  // Y,U,V planes (1 B/px) then Alfa, Aux planes (2 B/px LE)
  graymap,     // binary PGM (P5), 8-bit, Y only
};

/// Raw-planar files carry no header, so width/height are required for them
/// and ignored for graymaps.
Frame load_frame(const std::filesystem::path& path, FrameFormat format,
                 std::optional<int> width = std::nullopt,
                 std::optional<int> height = std::nullopt);

void save_frame(const Frame& f, const std::filesystem::path& path,
                FrameFormat format);

}  // namespace ae

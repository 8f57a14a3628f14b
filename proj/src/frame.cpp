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

#include "addrengine/frame.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "addrengine/errors.hpp"

namespace ae {

WordPair pack_pixel(const Pixel& p) noexcept {
  WordPair w;
  w.lower = static_cast<std::uint32_t>(p.y) |
            (static_cast<std::uint32_t>(p.u) << 8) |
            (static_cast<std::uint32_t>(p.v) << 16);
  w.upper = static_cast<std::uint32_t>(p.alfa) |
            (static_cast<std::uint32_t>(p.aux) << 16);
  return w;
}

Pixel unpack_pixel(const WordPair& w) {
  if ((w.lower & kLowerPaddingMask) != 0) {
    std::ostringstream msg;
    msg << "lower word 0x" << std::hex << w.lower
        << " has nonzero padding bits";
    throw_error(ErrorCode::malformed_word, msg.str());
  }
  Pixel p;
  p.y = static_cast<std::uint8_t>(w.lower & 0xFF);
  p.u = static_cast<std::uint8_t>((w.lower >> 8) & 0xFF);
  p.v = static_cast<std::uint8_t>((w.lower >> 16) & 0xFF);
  p.alfa = static_cast<std::uint16_t>(w.upper & 0xFFFF);
  p.aux = static_cast<std::uint16_t>(w.upper >> 16);
  return p;
}

Frame::Frame(int width, int height) {
  if (width < 0 || height < 0) {
    throw_error(ErrorCode::invalid_argument, "negative frame dimensions");
  }
  width_ = width;
  height_ = height;
  data_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
}

Frame::Frame(int width, int height, std::vector<Pixel> data)
    : Frame(width, height) {
  if (data.size() != data_.size()) {
    throw_error(ErrorCode::size_mismatch,
                "pixel data length does not match width x height");
  }
  data_ = std::move(data);
}

FrameTag Frame::tag() const noexcept {
  if (width_ == kQcifWidth && height_ == kQcifHeight) return FrameTag::qcif;
  if (width_ == kCifWidth && height_ == kCifHeight) return FrameTag::cif;
  return FrameTag::custom;
}

const Pixel& Frame::clamped(int x, int y) const noexcept {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return data_[index(x, y)];
}

std::uint64_t frame_byte_size(int width, int height) noexcept {
  if (width <= 0 || height <= 0) return 0;
  return static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height) *
         kBytesPerPixel;
}

namespace {

constexpr std::size_t kRawBytesPerPixel = 7;  // 1+1+1+2+2

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw_error(ErrorCode::io, "cannot open '" + path.string() + "' for reading");
  }
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

void write_all(const std::filesystem::path& path,
               const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw_error(ErrorCode::io, "cannot open '" + path.string() + "' for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw_error(ErrorCode::io, "write failed for '" + path.string() + "'");
}

Frame decode_raw(const std::vector<unsigned char>& bytes, int width, int height) {
  if (width < 0 || height < 0) {
    throw_error(ErrorCode::invalid_argument, "negative frame dimensions");
  }
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() != n * kRawBytesPerPixel) {
    std::ostringstream msg;
    msg << "raw-planar file holds " << bytes.size() << " bytes, expected "
        << n * kRawBytesPerPixel << " for " << width << "x" << height;
    throw_error(ErrorCode::size_mismatch, msg.str());
  }
  Frame f(width, height);
  auto px = f.pixels();
  const unsigned char* y = bytes.data();
  const unsigned char* u = y + n;
  const unsigned char* v = u + n;
  const unsigned char* a = v + n;
  const unsigned char* x = a + 2 * n;
  for (std::size_t i = 0; i < n; ++i) {
    px[i].y = y[i];
    px[i].u = u[i];
    px[i].v = v[i];
    px[i].alfa = static_cast<std::uint16_t>(a[2 * i] | (a[2 * i + 1] << 8));
    px[i].aux = static_cast<std::uint16_t>(x[2 * i] | (x[2 * i + 1] << 8));
  }
  return f;
}

std::vector<unsigned char> encode_raw(const Frame& f) {
  const std::size_t n = f.pixel_count();
  std::vector<unsigned char> bytes(n * kRawBytesPerPixel);
  unsigned char* y = bytes.data();
  unsigned char* u = y + n;
  unsigned char* v = u + n;
  unsigned char* a = v + n;
  unsigned char* x = a + 2 * n;
  auto px = f.pixels();
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = px[i].y;
    u[i] = px[i].u;
    v[i] = px[i].v;
    a[2 * i] = static_cast<unsigned char>(px[i].alfa & 0xFF);
    a[2 * i + 1] = static_cast<unsigned char>(px[i].alfa >> 8);
    x[2 * i] = static_cast<unsigned char>(px[i].aux & 0xFF);
    x[2 * i + 1] = static_cast<unsigned char>(px[i].aux >> 8);
  }
  return bytes;
}

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string pgm_token(const std::vector<unsigned char>& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(bytes[pos])) {
      ++pos;
    } else {
      break;
    }
  }
  std::string tok;
  while (pos < bytes.size() && !std::isspace(bytes[pos]) && bytes[pos] != '#') {
    tok.push_back(static_cast<char>(bytes[pos++]));
  }
  if (tok.empty()) throw_error(ErrorCode::malformed_header, "truncated graymap header");
  return tok;
}

int pgm_int(const std::vector<unsigned char>& bytes, std::size_t& pos,
            const char* field) {
  const std::string tok = pgm_token(bytes, pos);
  if (!std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(c); }) ||
      tok.size() > 9) {
    throw_error(ErrorCode::malformed_header,
                std::string("bad graymap ") + field + " '" + tok + "'");
  }
  return std::stoi(tok);
}

Frame decode_pgm(const std::vector<unsigned char>& bytes) {
  std::size_t pos = 0;
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw_error(ErrorCode::malformed_header, "graymap magic is not P5");
  }
  pos = 2;
  const int width = pgm_int(bytes, pos, "width");
  const int height = pgm_int(bytes, pos, "height");
  const int maxval = pgm_int(bytes, pos, "maxval");
  if (maxval < 1 || maxval > 255) {
    throw_error(ErrorCode::malformed_header, "only 8-bit graymaps are supported");
  }
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw_error(ErrorCode::malformed_header, "missing separator after maxval");
  }
  ++pos;
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - pos != n) {
    std::ostringstream msg;
    msg << "graymap raster holds " << bytes.size() - pos << " bytes, expected " << n;
    throw_error(ErrorCode::size_mismatch, msg.str());
  }
  Frame f(width, height);
  auto px = f.pixels();
  for (std::size_t i = 0; i < n; ++i) px[i].y = bytes[pos + i];
  return f;
}

std::vector<unsigned char> encode_pgm(const Frame& f) {
  const std::string header = "P5\n" + std::to_string(f.width()) + " " +
                             std::to_string(f.height()) + "\n255\n";
  std::vector<unsigned char> bytes(header.begin(), header.end());
  bytes.reserve(bytes.size() + f.pixel_count());
  for (const Pixel& p : f.pixels()) bytes.push_back(p.y);
  return bytes;
}

}  // namespace

Frame load_frame(const std::filesystem::path& path, FrameFormat format,
                 std::optional<int> width, std::optional<int> height) {
  const auto bytes = read_all(path);
  switch (format) {
    case FrameFormat::raw_planar:
      if (!width || !height) {
        throw_error(ErrorCode::invalid_argument,
                    "raw-planar frames need an explicit width and height");
      }
      return decode_raw(bytes, *width, *height);
    case FrameFormat::graymap:
      return decode_pgm(bytes);
  }
  throw_error(ErrorCode::invalid_argument, "unknown frame format");
}

void save_frame(const Frame& f, const std::filesystem::path& path,
                FrameFormat format) {
  switch (format) {
    case FrameFormat::raw_planar:
      write_all(path, encode_raw(f));
      return;
    case FrameFormat::graymap:
      write_all(path, encode_pgm(f));
      return;
  }
  throw_error(ErrorCode::invalid_argument, "unknown frame format");
}

}  // namespace ae

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
#include <random>
#include <string>

#include "addrengine/frame.hpp"

namespace ae::test {

// Alfa stays small so histogram keys collide.
inline Frame random_frame(int w, int h, std::mt19937& rng, std::uint16_t alfa_values = 8) {
  Frame f(w, h);
  for (Pixel& p : f.pixels()) {
    p.y = static_cast<std::uint8_t>(rng());
    p.u = static_cast<std::uint8_t>(rng());
    p.v = static_cast<std::uint8_t>(rng());
    p.alfa = static_cast<std::uint16_t>(rng() % alfa_values);
    p.aux = static_cast<std::uint16_t>(rng());
  }
  return f;
}

// Piecewise-flat frame: a few random levels plus small noise, so region
// growing finds sizable segments.
inline Frame blocky_frame(int w, int h, std::mt19937& rng, int noise) {
  Frame f(w, h);
  const int bw = 1 + static_cast<int>(rng() % 6);
  const int bh = 1 + static_cast<int>(rng() % 6);
  std::uniform_int_distribution<int> level(0, 3);
  std::uniform_int_distribution<int> jitter(0, noise);
  std::vector<int> levels(static_cast<std::size_t>((w / bw + 1) * (h / bh + 1)));
  for (int& l : levels) l = 60 * level(rng);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int base = levels[static_cast<std::size_t>((y / bh) * (w / bw + 1) + x / bw)];
      Pixel& p = f.at(x, y);
      p.y = static_cast<std::uint8_t>(base + jitter(rng));
      p.u = static_cast<std::uint8_t>(base / 2 + jitter(rng));
      p.v = static_cast<std::uint8_t>(255 - base - jitter(rng));
      p.alfa = static_cast<std::uint16_t>(base / 60);
    }
  }
  return f;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("addrengine-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace ae::test

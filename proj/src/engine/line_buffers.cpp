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

#include "addrengine/engine/line_buffers.hpp"

#include <string>

#include "addrengine/engine/layout.hpp"
#include "addrengine/errors.hpp"

namespace ae::engine {

LineFifo::LineFifo(int capacity_lines, int line_length, int total_lines)
    : line_length_(line_length), total_lines_(total_lines) {
  if (capacity_lines < 1 || line_length < 0 || total_lines < 0) {
    throw_error(ErrorCode::invalid_argument, "bad line FIFO geometry");
  }
  blocks_.resize(static_cast<std::size_t>(capacity_lines));
  for (int i = capacity_lines - 1; i >= 0; --i) {
    Block& b = blocks_[static_cast<std::size_t>(i)];
    b.words.resize(static_cast<std::size_t>(line_length));
    b.stamp.resize(static_cast<std::size_t>(line_length), 0);
    free_.push_back(i);
  }
}

bool LineFifo::empty() const noexcept {
  // Lines complete in order, so the oldest occupied block decides.
  if (order_.empty()) return true;
  const Block& b = blocks_[static_cast<std::size_t>(order_.front())];
  return b.filled < line_length_;
}

std::optional<LineFifo::Target> LineFifo::fill_target() const {
  if (!order_.empty()) {
    const Block& last = blocks_[static_cast<std::size_t>(order_.back())];
    if (last.filled < line_length_) return Target{last.line, last.filled};
  }
  if (next_line_ >= total_lines_ || free_.empty() || line_length_ == 0) return std::nullopt;
  return Target{next_line_, 0};
}

bool LineFifo::fill(std::uint64_t cycle, const WordPair& words) {
  Block* b = nullptr;
  if (!order_.empty()) {
    Block& last = blocks_[static_cast<std::size_t>(order_.back())];
    if (last.filled < line_length_) b = &last;
  }
  if (b == nullptr) {
    if (free_.empty() || next_line_ >= total_lines_) {
      throw_error(ErrorCode::protocol_violation, "IIM fill with no free line block");
    }
    const int idx = free_.back();
    free_.pop_back();
    order_.push_back(idx);
    b = &blocks_[static_cast<std::size_t>(idx)];
    b->line = next_line_++;
    b->filled = 0;
  }
  const auto pos = static_cast<std::size_t>(b->filled);
  b->words[pos] = words;
  b->stamp[pos] = cycle;
  ++b->filled;
  if (b->filled == line_length_) {
    b->resident_cycle = cycle;
    return true;
  }
  return false;
}

const LineFifo::Block* LineFifo::find(int line) const {
  if (order_.empty()) return nullptr;
  const int first = blocks_[static_cast<std::size_t>(order_.front())].line;
  const int k = line - first;
  if (k < 0 || k >= static_cast<int>(order_.size())) return nullptr;
  return &blocks_[static_cast<std::size_t>(order_[static_cast<std::size_t>(k)])];
}

bool LineFifo::resident(int line, std::uint64_t cycle) const {
  const Block* b = find(line);
  return b != nullptr && b->filled == line_length_ && b->resident_cycle < cycle;
}

std::uint64_t LineFifo::resident_cycle(int line) const {
  const Block* b = find(line);
  if (b == nullptr || b->filled < line_length_) {
    throw_error(ErrorCode::protocol_violation, "line " + std::to_string(line) + " is not resident");
  }
  return b->resident_cycle;
}

const WordPair& LineFifo::read(int line, int pos, std::uint64_t cycle) const {
  const Block* b = find(line);
  if (b == nullptr || pos < 0 || pos >= b->filled ||
      b->stamp[static_cast<std::size_t>(pos)] >= cycle) {
    throw_error(ErrorCode::protocol_violation,
                "IIM read of line " + std::to_string(line) + " pos " + std::to_string(pos) +
                    " before it was transferred");
  }
  return b->words[static_cast<std::size_t>(pos)];
}

std::optional<int> LineFifo::first_missing(int lo, int hi, std::uint64_t cycle) const {
  for (int l = lo; l <= hi; ++l) {
    if (!resident(l, cycle)) return l;
  }
  return std::nullopt;
}

void LineFifo::release_below(int line) {
  while (!order_.empty()) {
    Block& b = blocks_[static_cast<std::size_t>(order_.front())];
    if (b.line >= line || b.filled < line_length_) break;
    b.line = -1;
    b.filled = 0;
    free_.push_back(order_.front());
    order_.pop_front();
  }
}

Iim::Iim(int fifo_count, int lines_per_fifo, int line_length, int total_lines) {
  for (int i = 0; i < fifo_count; ++i) fifos_.emplace_back(lines_per_fifo, line_length, total_lines);
}

Iim Iim::for_intra(int line_length, int total_lines) {
  return Iim(1, kIimLines, line_length, total_lines);
}

Iim Iim::for_inter(int line_length, int total_lines) {
  return Iim(2, kInterFifoLines, line_length, total_lines);
}

std::optional<int> Iim::fetch_column(int fifo, std::span<const int> lines, int pos,
                                     std::uint64_t cycle, std::span<WordPair> out) const {
  const LineFifo& f = this->fifo(fifo);
  for (int l : lines) {
    if (!f.resident(l, cycle)) return l;
  }
  for (std::size_t i = 0; i < lines.size(); ++i) out[i] = f.read(lines[i], pos, cycle);
  return std::nullopt;
}

Oim::Oim(int capacity_lines, int line_length)
    : capacity_(static_cast<std::size_t>(capacity_lines) *
                static_cast<std::size_t>(line_length < 1 ? 1 : line_length)) {}

void Oim::push(std::uint64_t cycle, std::uint64_t index, const WordPair& words) {
  if (full()) throw_error(ErrorCode::protocol_violation, "OIM push while FULL");
  entries_.push_back({index, words, cycle});
}

}  // namespace ae::engine

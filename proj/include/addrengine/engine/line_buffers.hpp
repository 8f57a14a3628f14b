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
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "addrengine/frame.hpp"

namespace ae::engine {

/// A FIFO of whole scan lines held in line-sized block pairs (lower and
/// upper word blocks). The input TxU loads lines in order, one pixel per
/// cycle; the process unit reads resident lines and releases the ones it has
/// scanned past.
class LineFifo {
 public:
  LineFifo(int capacity_lines, int line_length, int total_lines);

  int capacity() const noexcept { return static_cast<int>(blocks_.size()); }
  int occupied() const noexcept { return static_cast<int>(order_.size()); }
  int line_length() const noexcept { return line_length_; }

  /// FULL: every block holds (or is loading) a line.
  bool full() const noexcept { return occupied() == capacity(); }
  /// EMPTY: no complete line available.
  bool empty() const noexcept;

  struct Target {
    int line = 0;
    int pos = 0;
  };
  /// Next pixel the TxU should load, or nothing when all lines are loaded
  /// or no block is free.
  std::optional<Target> fill_target() const;
  /// Stores the next pixel. Returns true when it completed a line.
  bool fill(std::uint64_t cycle, const WordPair& words);

  /// Line complete with its last word written before `cycle`.
  bool resident(int line, std::uint64_t cycle) const;
  /// Throws Error(protocol_violation) if the word is not resident.
  const WordPair& read(int line, int pos, std::uint64_t cycle) const;
  /// First line in [lo, hi] that is not resident, if any.
  std::optional<int> first_missing(int lo, int hi, std::uint64_t cycle) const;
  /// Frees every line below `line`.
  void release_below(int line);

  std::uint64_t resident_cycle(int line) const;

 private:
  struct Block {
    int line = -1;
    int filled = 0;
    std::uint64_t resident_cycle = 0;
    std::vector<WordPair> words;
    std::vector<std::uint64_t> stamp;
  };

  const Block* find(int line) const;

  int line_length_;
  int total_lines_;
  int next_line_ = 0;  // next line to start loading
  std::vector<Block> blocks_;
  std::deque<int> order_;  // occupied block indices, ascending line
  std::vector<int> free_;
};

/// Input intermediate memory: one 16-line FIFO for intra addressing, two
/// 8-line FIFOs (one per input image) for inter addressing.
class Iim {
 public:
  Iim(int fifo_count, int lines_per_fifo, int line_length, int total_lines);

  static Iim for_intra(int line_length, int total_lines);
  static Iim for_inter(int line_length, int total_lines);

  int fifo_count() const noexcept { return static_cast<int>(fifos_.size()); }
  LineFifo& fifo(int i) { return fifos_.at(static_cast<std::size_t>(i)); }
  const LineFifo& fifo(int i) const { return fifos_.at(static_cast<std::size_t>(i)); }

  /// Reads the pixels of `lines` at `pos` in one cycle. Returns the first
  /// non-resident line instead when any is missing (the caller stalls).
  std::optional<int> fetch_column(int fifo, std::span<const int> lines, int pos,
                                  std::uint64_t cycle, std::span<WordPair> out) const;

 private:
  std::vector<LineFifo> fifos_;
};

/// Output intermediate memory: same 16-line capacity as the IIM, holding
/// result pixels until the output TxU writes them to ZBT at one word per
/// cycle.
class Oim {
 public:
  struct Entry {
    std::uint64_t index = 0;  // production order
    WordPair words;
    std::uint64_t cycle = 0;  // push cycle
  };

  Oim(int capacity_lines, int line_length);

  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool full() const noexcept { return entries_.size() >= capacity_; }
  bool empty() const noexcept { return entries_.empty(); }

  /// Throws Error(protocol_violation) when FULL.
  void push(std::uint64_t cycle, std::uint64_t index, const WordPair& words);
  const Entry& front() const { return entries_.front(); }
  void pop() { entries_.pop_front(); }

 private:
  std::size_t capacity_;
  std::deque<Entry> entries_;
};

}  // namespace ae::engine

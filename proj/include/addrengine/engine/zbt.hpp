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

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

#include "addrengine/engine/layout.hpp"
#include "addrengine/engine/trace.hpp"

namespace ae::engine {

/// Six single-ported banks of 32-bit words. Every word remembers the cycle
/// it was written, and every bank the last cycle its port was used; a second
/// access in one cycle or a read of an unwritten word is a protocol
/// violation.
class ZbtMemory {
 public:
  static constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

  explicit ZbtMemory(Trace* trace = nullptr) : trace_(trace) {}

  bool port_free(int bank, std::uint64_t cycle) const;
  /// True when the word holds data written strictly before `cycle`.
  bool written_before(int bank, std::uint32_t address, std::uint64_t cycle) const;

  void write(std::uint64_t cycle, Unit unit, int bank, std::uint32_t address,
             std::uint32_t value);
  std::uint32_t read(std::uint64_t cycle, Unit unit, int bank, std::uint32_t address);

  std::uint64_t word_reads() const noexcept { return word_reads_; }
  std::uint64_t word_writes() const noexcept { return word_writes_; }

 private:
  struct Bank {
    std::vector<std::uint32_t> words;
    std::vector<std::uint64_t> stamp;
    std::uint64_t last_access = kNever;
  };

  void claim(std::uint64_t cycle, int bank, std::uint32_t address);
  void record(std::uint64_t cycle, Unit unit, int bank, std::uint32_t address,
              AccessKind kind);

  std::array<Bank, kBankCount> banks_;
  Trace* trace_;
  std::uint64_t word_reads_ = 0;
  std::uint64_t word_writes_ = 0;
};

}  // namespace ae::engine

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
#include <vector>

#include "addrengine/addresslib.hpp"
#include "addrengine/engine/layout.hpp"
#include "addrengine/engine/line_buffers.hpp"
#include "addrengine/engine/pipeline.hpp"
#include "addrengine/engine/trace.hpp"
#include "addrengine/engine/zbt.hpp"
#include "addrengine/frame.hpp"
#include "addrengine/indexed_table.hpp"
#include "addrengine/kernels.hpp"

namespace ae::engine {

/// One clock domain for the engine, the ZBT banks and the host bus.
struct TimingConfig {
  double clock_hz = 66.0e6;
  std::uint32_t bytes_per_word = 4;  // host bus and ZBT port width
  // Share of the result image that must sit in result block A before the
  // single bank switch hands block A to the host bus. See README, "Timing
  // model", for how the default is derived.
  double result_switch_fraction = 0.25;
  InterTransfer inter_transfer = InterTransfer::interleaved;

  double bank_bytes_per_second() const noexcept {
    return clock_hz * static_cast<double>(bytes_per_word);
  }
};

struct EngineConfig {
  AddressingMode mode = AddressingMode::intra;
  NeighborhoodMask mask = NeighborhoodMask::con0();
  ScanOrder scan = ScanOrder::horizontal;
  Kernel kernel = Kernel::identity();
  TimingConfig timing;
  bool record_trace = false;
};

struct Counters {
  // Per-pixel-cycle events: one parallel neighborhood read, one result write.
  std::uint64_t zbt_read_events = 0;
  std::uint64_t zbt_write_events = 0;
  // Raw 32-bit word traffic on the banks, all units.
  std::uint64_t zbt_word_reads = 0;
  std::uint64_t zbt_word_writes = 0;
  std::uint64_t host_words_in = 0;
  std::uint64_t host_words_out = 0;
  std::uint64_t cycles_total = 0;
  std::uint64_t cycles_stalled = 0;
  std::uint64_t compute_active_cycles = 0;
  std::uint64_t overlap_cycles = 0;  // compute and bus transfer both active
  std::uint64_t bus_busy_cycles = 0;
  std::uint64_t iim_fetches = 0;
  std::uint64_t loads = 0;
  std::uint64_t shifts = 0;
  std::uint64_t fetch_stall_cycles = 0;
  std::uint64_t oim_full_cycles = 0;
  std::uint64_t arbiter_conflicts = 0;

  std::uint64_t hardware_access_events() const noexcept {
    return zbt_read_events + zbt_write_events;
  }
};

struct TimingReport {
  std::uint64_t total_cycles = 0;
  std::uint64_t transfer_cycles = 0;         // input transfer, host to board
  std::uint64_t output_transfer_cycles = 0;  // first to last result word
  std::uint64_t compute_only_cycles = 0;     // input done, output not yet started
  double overlap_fraction = 0.0;             // compute cycles with the bus busy
  double non_overlap_ratio = 0.0;            // compute_only / transfer
  double seconds = 0.0;
};

struct OutputSchedule {
  std::uint64_t start_cycle = 0;
  std::uint64_t end_cycle = 0;  // cycle of the last word
  std::uint64_t words = 0;
  std::uint64_t switch_pixel = 0;  // first result pixel stored in block B
  int bank_switches = 0;
};

/// Raw milestones a timing report is computed from.
struct RunLedger {
  std::uint64_t input_words = 0;
  std::uint64_t output_start = 0;
  std::uint64_t output_end = 0;  // exclusive
  std::uint64_t total_cycles = 0;
  std::uint64_t compute_active_cycles = 0;
  std::uint64_t overlap_cycles = 0;
};

TimingReport timing_report(const RunLedger& ledger, const TimingConfig& timing);

struct EngineRun {
  Frame output;
  SadAccumulator sad;
  IndexedTable table;
  Counters counters;
  TimingReport timing;
  RunLedger ledger;
  TransferSchedule transfer_in;
  OutputSchedule transfer_out;
  std::vector<ScheduleEvent> events;
  Trace trace;
};

/// Runs one engine call. `b` is the second input for inter addressing.
/// Throws Error(unsupported_mode) for segment addressing, Error(mask_span)
/// when the mask does not fit the line FIFOs, and Error(non_divisible) or
/// Error(layout_overflow) for frames the strip layout cannot hold.
EngineRun run_engine(const EngineConfig& config, const Frame& a, const Frame* b = nullptr);

/// Output TxU: moves result pixels from the OIM into the current result
/// bank, lower word then upper word at consecutive addresses.
class OutputTxu {
 public:
  OutputTxu(Oim& oim, ZbtMemory& zbt, int bank = kResultBankA);

  /// Writes at most one word. Returns true if it wrote.
  bool step(std::uint64_t cycle);
  /// Later pixels go to result block B. Only one switch is allowed.
  void switch_bank();

  int target_bank() const noexcept { return bank_; }
  std::uint64_t pixels_written() const noexcept { return written_; }
  /// Bank holding result pixel k, or -1 if its lower word is not written.
  int bank_of(std::uint64_t k) const noexcept {
    return k < pixel_bank_.size() ? pixel_bank_[k] : -1;
  }

 private:
  Oim& oim_;
  ZbtMemory& zbt_;
  int bank_;
  int phase_ = 0;
  std::uint64_t written_ = 0;
  std::vector<std::int8_t> pixel_bank_;
};

/// Drains the whole OIM into `bank` starting at `start_cycle`; returns the
/// cycles consumed (two per pixel on an idle bank).
std::uint64_t oim_drain(Oim& oim, ZbtMemory& zbt, Counters& counters,
                        std::uint64_t start_cycle, int bank = kResultBankA);

}  // namespace ae::engine

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
#include <optional>
#include <vector>

#include "addrengine/addresslib.hpp"
#include "addrengine/engine/layout.hpp"
#include "addrengine/engine/line_buffers.hpp"
#include "addrengine/engine/trace.hpp"
#include "addrengine/indexed_table.hpp"
#include "addrengine/kernels.hpp"

namespace ae::engine {

enum class Resource : std::uint8_t {
  scan_counters,
  iim_read,
  matrix_register,
  alu,
  oim_write,
  table_port,  // single-ported segment-indexed table
};
inline constexpr int kResourceCount = 6;

using ResourceMask = std::uint8_t;
constexpr ResourceMask resource_bit(Resource r) {
  return static_cast<ResourceMask>(1u << static_cast<unsigned>(r));
}

enum class InstrKind : std::uint8_t { scan, load, shift, exec, store };

struct Instruction {
  InstrKind kind = InstrKind::scan;
  int stage = 1;
  ResourceMask resources = 0;
};

/// Control FSM output: the four instructions of one pixel-cycle.
using InstructionBundle = std::array<Instruction, 4>;

/// Stage 2 loads the whole matrix at the start of each scan line and shifts
/// in one new column everywhere else.
InstructionBundle control_fsm(int pos_in_line, bool uses_table);

/// Grants resources for one cycle. Requests must arrive oldest pixel-cycle
/// first; a request overlapping an earlier grant is refused, so the younger
/// instruction stalls.
class Arbiter {
 public:
  void begin_cycle();
  bool acquire(int stage, ResourceMask request);
  std::uint64_t conflicts() const noexcept { return conflicts_; }
  ResourceMask granted() const noexcept { return granted_; }

 private:
  ResourceMask granted_ = 0;
  std::array<int, kResourceCount> holder_{};
  int last_stage_ = 5;
  std::uint64_t conflicts_ = 0;
};

/// Register grid holding the neighborhood bounding box (center included),
/// in (line, pos) orientation.
class MatrixRegister {
 public:
  MatrixRegister(const ScanGeometry& geo, const NeighborhoodMask& mask);

  int rows() const noexcept { return line_hi_ - line_lo_ + 1; }
  int cols() const noexcept { return pos_hi_ - pos_lo_ + 1; }
  int line_lo() const noexcept { return line_lo_; }
  int line_hi() const noexcept { return line_hi_; }
  int pos_lo() const noexcept { return pos_lo_; }
  int pos_hi() const noexcept { return pos_hi_; }

  Pixel& at(int row, int col) { return grid_[index(row, col)]; }
  const Pixel& at(int row, int col) const { return grid_[index(row, col)]; }
  const Pixel& center() const { return at(-line_lo_, -pos_lo_); }

  /// Drops column 0 and moves every other column one step left.
  void shift_left();
  /// Neighborhood in mask order.
  void gather(std::vector<Pixel>& out) const;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols()) +
           static_cast<std::size_t>(col);
  }

  int line_lo_, line_hi_, pos_lo_, pos_hi_;
  std::vector<Offset> taps_;  // mask offsets as (line, pos)
  std::vector<Pixel> grid_;
};

/// One pixel-cycle moving through the four stages.
struct PixelCycle {
  std::uint64_t index = 0;
  int line = 0;
  int pos = 0;
  InstructionBundle bundle{};
  std::vector<Pixel> neigh;  // stage-2 latch, mask order
  Pixel center_a;
  Pixel center_b;
  KernelResult result;
};

struct PipelineStatus {
  bool executed = false;  // some stage did work this cycle
  bool stalled = false;   // some in-flight instruction could not proceed
};

struct PipelineStats {
  std::uint64_t fetches = 0;
  std::uint64_t loads = 0;
  std::uint64_t shifts = 0;
  std::uint64_t fetch_stall_cycles = 0;
  std::uint64_t oim_full_cycles = 0;
  std::uint64_t arbiter_conflicts = 0;
};

/// The pixel level controller and the four-stage process unit:
///   1 SCAN   advance the position counters
///   2 LOAD / SHIFT  IIM -> matrix register
///   3 EXEC   kernel on the latched neighborhood
///   4 STORE  result -> OIM
class ProcessUnit {
 public:
  ProcessUnit(const ScanGeometry& geo, AddressingMode mode, const NeighborhoodMask& mask,
              const Kernel& kernel, Iim& iim, Oim& oim, Trace* trace = nullptr);

  PipelineStatus step(std::uint64_t cycle, bool issue_enabled);

  bool done() const noexcept { return stored_ == total_; }
  std::uint64_t issued() const noexcept { return next_; }
  std::uint64_t stored() const noexcept { return stored_; }
  int in_flight() const noexcept;
  const std::optional<PixelCycle>& stage(int s) const {
    return stages_.at(static_cast<std::size_t>(s - 1));
  }

  SadAccumulator sad() const noexcept { return sad_; }
  const IndexedTable& table() const noexcept { return table_; }
  PipelineStats stats() const noexcept;

 private:
  void store_stage(std::uint64_t cycle, PipelineStatus& st);
  void exec_stage(PipelineStatus& st);
  void fetch_stage(std::uint64_t cycle, PipelineStatus& st);
  void scan_stage(bool issue_enabled, PipelineStatus& st);
  void fill_column(int fifo, MatrixRegister& m, int col, int pos, std::uint64_t cycle);

  std::optional<PixelCycle>& slot(int s) { return stages_[static_cast<std::size_t>(s - 1)]; }

  ScanGeometry geo_;
  AddressingMode mode_;
  Kernel kernel_;
  bool uses_table_;
  Iim& iim_;
  Oim& oim_;
  Trace* trace_;

  std::vector<MatrixRegister> matrices_;  // one per IIM FIFO
  std::vector<int> lines_;                // scratch: rows of the current column
  std::vector<WordPair> column_;          // scratch

  std::array<std::optional<PixelCycle>, 4> stages_;
  Arbiter arbiter_;
  std::uint64_t total_;
  std::uint64_t next_ = 0;
  std::uint64_t stored_ = 0;
  SadAccumulator sad_;
  IndexedTable table_;
  PipelineStats stats_;
};

}  // namespace ae::engine

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
#include <iosfwd>
#include <string_view>
#include <vector>

namespace ae::engine {

enum class Unit : std::uint8_t {
  host_in,   // PCI DMA, host -> ZBT
  host_out,  // PCI DMA, ZBT -> host
  txu_in0,   // ZBT -> IIM, input slot 0
  txu_in1,   // ZBT -> IIM, input slot 1
  txu_out,   // OIM -> ZBT
};

std::string_view unit_name(Unit u) noexcept;

enum class AccessKind : std::uint8_t { read, write };

/// One 32-bit ZBT word access.
struct AccessEvent {
  std::uint64_t cycle = 0;
  Unit unit = Unit::host_in;
  std::uint8_t bank = 0;
  std::uint32_t address = 0;
  AccessKind kind = AccessKind::read;
};

enum class FetchKind : std::uint8_t { load, shift };

/// One stage-2 attempt to read a neighborhood from the IIM.
struct FetchEvent {
  std::uint64_t cycle = 0;
  std::uint64_t pixel = 0;
  FetchKind kind = FetchKind::load;
  bool stalled = false;
  int line_lo = 0;  // required line range, clamped to the frame
  int line_hi = 0;
  int missing_line = -1;
};

/// An IIM line became complete; readable from cycle + 1.
struct ResidencyEvent {
  std::uint64_t cycle = 0;
  int fifo = 0;
  int line = 0;
};

enum class ScheduleKind : std::uint8_t {
  strip_complete,
  input_complete,
  bank_switch,
  output_start,
  output_complete,
};

std::string_view schedule_kind_name(ScheduleKind k) noexcept;

/// Interrupt-style milestones of a run.
struct ScheduleEvent {
  std::uint64_t cycle = 0;
  ScheduleKind kind = ScheduleKind::strip_complete;
  int slot = -1;
  int strip = -1;
};

struct Trace {
  bool enabled = false;
  std::vector<AccessEvent> accesses;
  std::vector<FetchEvent> fetches;
  std::vector<ResidencyEvent> residency;
};

/// Line-delimited JSON, one ZBT access per line:
///   {"cycle":12,"unit":"txu_in0","bank":0,"address":5,"op":"r"}
void write_access_trace(const Trace& trace, std::ostream& out);

}  // namespace ae::engine

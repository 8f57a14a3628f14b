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

#include "addrengine/engine/trace.hpp"

#include <ostream>

namespace ae::engine {

std::string_view unit_name(Unit u) noexcept {
  switch (u) {
    case Unit::host_in: return "host_in";
    case Unit::host_out: return "host_out";
    case Unit::txu_in0: return "txu_in0";
    case Unit::txu_in1: return "txu_in1";
    case Unit::txu_out: return "txu_out";
  }
  return "?";
}

std::string_view schedule_kind_name(ScheduleKind k) noexcept {
  switch (k) {
    case ScheduleKind::strip_complete: return "strip_complete";
    case ScheduleKind::input_complete: return "input_complete";
    case ScheduleKind::bank_switch: return "bank_switch";
    case ScheduleKind::output_start: return "output_start";
    case ScheduleKind::output_complete: return "output_complete";
  }
  return "?";
}

void write_access_trace(const Trace& trace, std::ostream& out) {
  for (const AccessEvent& e : trace.accesses) {
    out << "{\"cycle\":" << e.cycle << ",\"unit\":\"" << unit_name(e.unit)
        << "\",\"bank\":" << static_cast<int>(e.bank) << ",\"address\":" << e.address
        << ",\"op\":\"" << (e.kind == AccessKind::read ? 'r' : 'w') << "\"}\n";
  }
}

}  // namespace ae::engine

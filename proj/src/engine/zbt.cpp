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

#include "addrengine/engine/zbt.hpp"

#include <string>

#include "addrengine/errors.hpp"

namespace ae::engine {

bool ZbtMemory::port_free(int bank, std::uint64_t cycle) const {
  return banks_.at(static_cast<std::size_t>(bank)).last_access != cycle;
}

bool ZbtMemory::written_before(int bank, std::uint32_t address, std::uint64_t cycle) const {
  const Bank& b = banks_.at(static_cast<std::size_t>(bank));
  return address < b.stamp.size() && b.stamp[address] < cycle;
}

void ZbtMemory::claim(std::uint64_t cycle, int bank, std::uint32_t address) {
  if (bank < 0 || bank >= kBankCount) {
    throw_error(ErrorCode::out_of_range, "bank " + std::to_string(bank) + " does not exist");
  }
  if (address >= kBankWords) {
    throw_error(ErrorCode::out_of_range,
                "address " + std::to_string(address) + " exceeds bank capacity");
  }
  Bank& b = banks_[static_cast<std::size_t>(bank)];
  if (b.last_access == cycle) {
    throw_error(ErrorCode::protocol_violation, "bank " + std::to_string(bank) +
                                                   " accessed twice in cycle " +
                                                   std::to_string(cycle));
  }
  b.last_access = cycle;
}

void ZbtMemory::record(std::uint64_t cycle, Unit unit, int bank, std::uint32_t address,
                       AccessKind kind) {
  if (trace_ != nullptr && trace_->enabled) {
    trace_->accesses.push_back({cycle, unit, static_cast<std::uint8_t>(bank), address, kind});
  }
}

void ZbtMemory::write(std::uint64_t cycle, Unit unit, int bank, std::uint32_t address,
                      std::uint32_t value) {
  claim(cycle, bank, address);
  Bank& b = banks_[static_cast<std::size_t>(bank)];
  if (address >= b.words.size()) {
    b.words.resize(static_cast<std::size_t>(address) + 1, 0);
    b.stamp.resize(static_cast<std::size_t>(address) + 1, kNever);
  }
  b.words[address] = value;
  b.stamp[address] = cycle;
  ++word_writes_;
  record(cycle, unit, bank, address, AccessKind::write);
}

std::uint32_t ZbtMemory::read(std::uint64_t cycle, Unit unit, int bank,
                              std::uint32_t address) {
  claim(cycle, bank, address);
  if (!written_before(bank, address, cycle)) {
    throw_error(ErrorCode::protocol_violation,
                std::string(unit_name(unit)) + " read bank " + std::to_string(bank) +
                    " address " + std::to_string(address) + " before it was written");
  }
  ++word_reads_;
  record(cycle, unit, bank, address, AccessKind::read);
  return banks_[static_cast<std::size_t>(bank)].words[address];
}

}  // namespace ae::engine

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
#include <map>

#include "addrengine/kernels.hpp"

namespace ae {

struct TableRecord {
  std::uint64_t count = 0;
  std::uint64_t sum_y = 0;
  std::uint64_t sum_u = 0;
  std::uint64_t sum_v = 0;

  friend bool operator==(const TableRecord&, const TableRecord&) = default;
};

/// Segment-indexed side table, keyed by segment id (the Alfa channel).
/// Reads of ids never touched return the zero record.
class IndexedTable {
 public:
  TableRecord read(std::uint16_t id) const;
  void accumulate(const TableContribution& c);

  std::size_t size() const noexcept { return records_.size(); }
  const std::map<std::uint16_t, TableRecord>& records() const noexcept {
    return records_;
  }

  friend bool operator==(const IndexedTable&, const IndexedTable&) = default;

 private:
  std::map<std::uint16_t, TableRecord> records_;
};

TableRecord table_read(const IndexedTable& t, std::uint16_t id);
IndexedTable table_accumulate(IndexedTable t, const TableContribution& c);

}  // namespace ae

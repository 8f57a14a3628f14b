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

#include "addrengine/indexed_table.hpp"

namespace ae {

TableRecord IndexedTable::read(std::uint16_t id) const {
  auto it = records_.find(id);
  return it == records_.end() ? TableRecord{} : it->second;
}

void IndexedTable::accumulate(const TableContribution& c) {
  TableRecord& r = records_[c.id];
  ++r.count;
  r.sum_y += c.sum_y;
  r.sum_u += c.sum_u;
  r.sum_v += c.sum_v;
}

TableRecord table_read(const IndexedTable& t, std::uint16_t id) { return t.read(id); }

IndexedTable table_accumulate(IndexedTable t, const TableContribution& c) {
  t.accumulate(c);
  return t;
}

}  // namespace ae

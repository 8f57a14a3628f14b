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

#include "addrengine/engine/pipeline.hpp"

#include <algorithm>
#include <string>

#include "addrengine/errors.hpp"

namespace ae::engine {

InstructionBundle control_fsm(int pos_in_line, bool uses_table) {
  const ResourceMask table = uses_table ? resource_bit(Resource::table_port) : 0;
  InstructionBundle b;
  b[0] = {InstrKind::scan, 1, resource_bit(Resource::scan_counters)};
  b[1] = {pos_in_line == 0 ? InstrKind::load : InstrKind::shift, 2,
          static_cast<ResourceMask>(resource_bit(Resource::iim_read) |
                                    resource_bit(Resource::matrix_register))};
  // EXEC reads the table record, STORE writes it back.
  b[2] = {InstrKind::exec, 3, static_cast<ResourceMask>(resource_bit(Resource::alu) | table)};
  b[3] = {InstrKind::store, 4,
          static_cast<ResourceMask>(resource_bit(Resource::oim_write) | table)};
  return b;
}

void Arbiter::begin_cycle() {
  granted_ = 0;
  holder_.fill(0);
  last_stage_ = 5;
}

bool Arbiter::acquire(int stage, ResourceMask request) {
  if (stage >= last_stage_) {
    throw_error(ErrorCode::protocol_violation,
                "arbiter requests must arrive oldest stage first");
  }
  last_stage_ = stage;
  if ((granted_ & request) != 0) {
    ++conflicts_;
    return false;
  }
  for (int r = 0; r < kResourceCount; ++r) {
    if ((request & (1u << r)) == 0) continue;
    if (holder_[static_cast<std::size_t>(r)] != 0) {
      throw_error(ErrorCode::protocol_violation,
                  "resource " + std::to_string(r) + " granted to two stages");
    }
    holder_[static_cast<std::size_t>(r)] = stage;
  }
  granted_ |= request;
  return true;
}

MatrixRegister::MatrixRegister(const ScanGeometry& geo, const NeighborhoodMask& mask) {
  line_lo_ = line_hi_ = pos_lo_ = pos_hi_ = 0;
  for (const Offset& o : mask.offsets()) {
    const Offset lp = geo.to_line_pos(o);
    taps_.push_back(lp);
    line_lo_ = std::min(line_lo_, lp.dy);
    line_hi_ = std::max(line_hi_, lp.dy);
    pos_lo_ = std::min(pos_lo_, lp.dx);
    pos_hi_ = std::max(pos_hi_, lp.dx);
  }
  grid_.resize(static_cast<std::size_t>(rows()) * static_cast<std::size_t>(cols()));
}

void MatrixRegister::shift_left() {
  for (int r = 0; r < rows(); ++r) {
    for (int c = 0; c + 1 < cols(); ++c) at(r, c) = at(r, c + 1);
  }
}

void MatrixRegister::gather(std::vector<Pixel>& out) const {
  out.clear();
  for (const Offset& t : taps_) out.push_back(at(t.dy - line_lo_, t.dx - pos_lo_));
}

ProcessUnit::ProcessUnit(const ScanGeometry& geo, AddressingMode mode,
                         const NeighborhoodMask& mask, const Kernel& kernel, Iim& iim,
                         Oim& oim, Trace* trace)
    : geo_(geo),
      mode_(mode),
      kernel_(kernel),
      uses_table_(uses_indexed_table(kernel.op)),
      iim_(iim),
      oim_(oim),
      trace_(trace),
      total_(geo.pixel_count()) {
  if (mode == AddressingMode::segment) {
    throw_error(ErrorCode::unsupported_mode, "the process unit has no segment addressing");
  }
  const int fifos = mode == AddressingMode::inter ? 2 : 1;
  if (iim.fifo_count() != fifos) {
    throw_error(ErrorCode::invalid_argument, "IIM FIFO count does not match the mode");
  }
  for (int i = 0; i < fifos; ++i) matrices_.emplace_back(geo, mask);
  lines_.resize(static_cast<std::size_t>(matrices_[0].rows()));
  column_.resize(lines_.size());
}

int ProcessUnit::in_flight() const noexcept {
  return static_cast<int>(std::count_if(stages_.begin(), stages_.end(),
                                        [](const auto& s) { return s.has_value(); }));
}

PipelineStats ProcessUnit::stats() const noexcept {
  PipelineStats s = stats_;
  s.arbiter_conflicts = arbiter_.conflicts();
  return s;
}

PipelineStatus ProcessUnit::step(std::uint64_t cycle, bool issue_enabled) {
  PipelineStatus st;
  arbiter_.begin_cycle();
  // Oldest first, so a stage sees whether its successor moved on this cycle.
  store_stage(cycle, st);
  exec_stage(st);
  fetch_stage(cycle, st);
  scan_stage(issue_enabled, st);
  return st;
}

void ProcessUnit::store_stage(std::uint64_t cycle, PipelineStatus& st) {
  auto& s4 = slot(4);
  if (!s4) return;
  if (oim_.full()) {
    st.stalled = true;
    ++stats_.oim_full_cycles;
    return;
  }
  if (!arbiter_.acquire(4, s4->bundle[3].resources)) {
    st.stalled = true;
    return;
  }
  oim_.push(cycle, s4->index, pack_pixel(s4->result.out));
  if (s4->result.table) table_.accumulate(*s4->result.table);
  s4.reset();
  ++stored_;
  st.executed = true;
}

void ProcessUnit::exec_stage(PipelineStatus& st) {
  auto& s3 = slot(3);
  if (!s3) return;
  if (slot(4) || !arbiter_.acquire(3, s3->bundle[2].resources)) {
    st.stalled = true;
    return;
  }
  if (mode_ == AddressingMode::inter) {
    s3->result = apply_inter(kernel_, s3->center_a, s3->center_b);
  } else {
    s3->result = apply_intra(kernel_, s3->neigh, s3->center_a);
  }
  if (s3->result.sad_term) sad_ = sad_add(sad_, *s3->result.sad_term);
  slot(4) = std::move(s3);
  s3.reset();
  st.executed = true;
}

void ProcessUnit::fill_column(int fifo, MatrixRegister& m, int col, int pos,
                              std::uint64_t cycle) {
  const int clamped = std::clamp(pos, 0, geo_.line_length() - 1);
  if (auto missing = iim_.fetch_column(fifo, lines_, clamped, cycle, column_)) {
    throw_error(ErrorCode::protocol_violation,
                "matrix fill from non-resident line " + std::to_string(*missing));
  }
  for (int r = 0; r < m.rows(); ++r) {
    m.at(r, col) = unpack_pixel(column_[static_cast<std::size_t>(r)]);
  }
}

void ProcessUnit::fetch_stage(std::uint64_t cycle, PipelineStatus& st) {
  auto& s2 = slot(2);
  if (!s2) return;
  if (slot(3) || !arbiter_.acquire(2, s2->bundle[1].resources)) {
    st.stalled = true;
    return;
  }

  MatrixRegister& m0 = matrices_[0];
  const int last_line = geo_.lines() - 1;
  for (int r = 0; r < m0.rows(); ++r) {
    lines_[static_cast<std::size_t>(r)] = std::clamp(s2->line + m0.line_lo() + r, 0, last_line);
  }
  const int lo = lines_.front();
  const int hi = lines_.back();

  std::optional<int> missing;
  for (int f = 0; f < iim_.fifo_count() && !missing; ++f) {
    missing = iim_.fifo(f).first_missing(lo, hi, cycle);
  }
  const InstrKind kind = s2->bundle[1].kind;
  if (trace_ != nullptr && trace_->enabled) {
    trace_->fetches.push_back({cycle, s2->index,
                               kind == InstrKind::load ? FetchKind::load : FetchKind::shift,
                               missing.has_value(), lo, hi, missing.value_or(-1)});
  }
  if (missing) {
    // The image level controller holds the pipeline until the line arrives.
    st.stalled = true;
    ++stats_.fetch_stall_cycles;
    return;
  }

  for (int f = 0; f < iim_.fifo_count(); ++f) {
    MatrixRegister& m = matrices_[static_cast<std::size_t>(f)];
    if (kind == InstrKind::load) {
      for (int c = 0; c < m.cols(); ++c) fill_column(f, m, c, s2->pos + m.pos_lo() + c, cycle);
    } else {
      m.shift_left();
      fill_column(f, m, m.cols() - 1, s2->pos + m.pos_hi(), cycle);
    }
  }
  ++stats_.fetches;
  ++(kind == InstrKind::load ? stats_.loads : stats_.shifts);

  s2->center_a = matrices_[0].center();
  if (mode_ == AddressingMode::inter) {
    s2->center_b = matrices_[1].center();
  } else {
    matrices_[0].gather(s2->neigh);
  }
  for (int f = 0; f < iim_.fifo_count(); ++f) {
    iim_.fifo(f).release_below(lo);
  }
  slot(3) = std::move(s2);
  s2.reset();
  st.executed = true;
}

void ProcessUnit::scan_stage(bool issue_enabled, PipelineStatus& st) {
  auto& s1 = slot(1);
  if (!s1 && issue_enabled && next_ < total_ && arbiter_.acquire(1, resource_bit(Resource::scan_counters))) {
    PixelCycle pc;
    pc.index = next_;
    const auto len = static_cast<std::uint64_t>(geo_.line_length());
    pc.line = static_cast<int>(next_ / len);
    pc.pos = static_cast<int>(next_ % len);
    pc.bundle = control_fsm(pc.pos, uses_table_);
    ++next_;
    s1 = std::move(pc);
    st.executed = true;
  }
  if (s1) {
    if (slot(2)) {
      st.stalled = true;
    } else {
      slot(2) = std::move(s1);
      s1.reset();
    }
  }
}

}  // namespace ae::engine

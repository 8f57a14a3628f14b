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

#include "addrengine/engine/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "addrengine/errors.hpp"

namespace ae::engine {

OutputTxu::OutputTxu(Oim& oim, ZbtMemory& zbt, int bank) : oim_(oim), zbt_(zbt), bank_(bank) {}

void OutputTxu::switch_bank() {
  if (bank_ != kResultBankA) {
    throw_error(ErrorCode::protocol_violation, "result blocks may switch only once");
  }
  bank_ = kResultBankB;
}

bool OutputTxu::step(std::uint64_t cycle) {
  if (oim_.empty()) return false;
  const Oim::Entry& e = oim_.front();
  if (e.cycle >= cycle) return false;
  const std::uint64_t k = e.index;
  if (phase_ == 0) {
    if (k != pixel_bank_.size()) {
      throw_error(ErrorCode::protocol_violation, "OIM drained out of production order");
    }
    if (!zbt_.port_free(bank_, cycle)) return false;
    zbt_.write(cycle, Unit::txu_out, bank_, static_cast<std::uint32_t>(2 * k), e.words.lower);
    pixel_bank_.push_back(static_cast<std::int8_t>(bank_));
    phase_ = 1;
    return true;
  }
  const int bank = pixel_bank_[k];
  if (!zbt_.port_free(bank, cycle)) return false;
  zbt_.write(cycle, Unit::txu_out, bank, static_cast<std::uint32_t>(2 * k + 1), e.words.upper);
  phase_ = 0;
  oim_.pop();
  ++written_;
  return true;
}

std::uint64_t oim_drain(Oim& oim, ZbtMemory& zbt, Counters& counters,
                        std::uint64_t start_cycle, int bank) {
  OutputTxu txu(oim, zbt, bank);
  const std::uint64_t reads0 = zbt.word_writes();
  std::uint64_t cycle = start_cycle;
  while (!oim.empty()) {
    txu.step(cycle);
    ++cycle;
  }
  counters.zbt_write_events += txu.pixels_written();
  counters.zbt_word_writes += zbt.word_writes() - reads0;
  return cycle - start_cycle;
}

TimingReport timing_report(const RunLedger& ledger, const TimingConfig& timing) {
  TimingReport r;
  r.total_cycles = ledger.total_cycles;
  r.transfer_cycles = ledger.input_words;
  r.output_transfer_cycles =
      ledger.output_end > ledger.output_start ? ledger.output_end - ledger.output_start : 0;
  r.compute_only_cycles =
      ledger.output_start > ledger.input_words ? ledger.output_start - ledger.input_words : 0;
  if (ledger.compute_active_cycles > 0) {
    r.overlap_fraction = static_cast<double>(ledger.overlap_cycles) /
                         static_cast<double>(ledger.compute_active_cycles);
  }
  if (r.transfer_cycles > 0) {
    r.non_overlap_ratio =
        static_cast<double>(r.compute_only_cycles) / static_cast<double>(r.transfer_cycles);
  }
  if (timing.clock_hz > 0) r.seconds = static_cast<double>(r.total_cycles) / timing.clock_hz;
  return r;
}

namespace {

void validate(const EngineConfig& cfg, const Frame& a, const Frame* b) {
  if (cfg.mode == AddressingMode::segment) {
    throw_error(ErrorCode::unsupported_mode,
                "the engine supports inter and intra addressing only; segment addressing "
                "runs in the library");
  }
  validate_kernel(cfg.kernel, cfg.mask);
  const bool two_frame = is_two_frame_op(cfg.kernel.op);
  if (cfg.mode == AddressingMode::inter) {
    if (b == nullptr) {
      throw_error(ErrorCode::invalid_argument, "inter addressing needs a second input frame");
    }
    if (!a.same_size(*b)) {
      throw_error(ErrorCode::dimension_mismatch, "inter addressing needs equal frame sizes");
    }
    if (!two_frame && cfg.kernel.op != KernelOp::identity) {
      throw_error(ErrorCode::unsupported_mode, std::string(kernel_op_name(cfg.kernel.op)) +
                                                   " is not a two-frame operation");
    }
  } else if (two_frame) {
    throw_error(ErrorCode::unsupported_mode,
                std::string(kernel_op_name(cfg.kernel.op)) + " needs inter addressing");
  }

  const int line_span = cfg.scan == ScanOrder::horizontal ? cfg.mask.vertical_span()
                                                          : cfg.mask.horizontal_span();
  const int fifo_lines = cfg.mode == AddressingMode::inter ? kInterFifoLines : kIimLines;
  if (line_span > fifo_lines) {
    throw_error(ErrorCode::mask_span, "mask spans " + std::to_string(line_span) +
                                          " lines but the IIM FIFO holds " +
                                          std::to_string(fifo_lines));
  }
  if (cfg.timing.clock_hz <= 0 || cfg.timing.bytes_per_word == 0 ||
      !(cfg.timing.result_switch_fraction >= 0.0 && cfg.timing.result_switch_fraction <= 1.0)) {
    throw_error(ErrorCode::invalid_argument, "bad timing configuration");
  }
}

class Simulator {
 public:
  Simulator(const EngineConfig& cfg, const Frame& a, const Frame* b)
      : cfg_(cfg),
        inputs_{&a, b},
        slots_(cfg.mode == AddressingMode::inter ? 2 : 1),
        geo_{a.width(), a.height(), cfg.scan},
        total_(geo_.pixel_count()),
        zbt_(&run_.trace),
        iim_(cfg.mode == AddressingMode::inter
                 ? Iim::for_inter(geo_.line_length(), geo_.lines())
                 : Iim::for_intra(geo_.line_length(), geo_.lines())),
        oim_(kIimLines, geo_.line_length()),
        pu_(geo_, cfg.mode, cfg.mask, cfg.kernel, iim_, oim_, &run_.trace),
        out_txu_(oim_, zbt_) {
    run_.trace.enabled = cfg.record_trace;
    run_.transfer_in = run_transfer_in(a.width(), a.height(), slots_, cfg.scan,
                                       cfg.timing.inter_transfer);
    const std::size_t strips = plan_strips(a.width(), a.height(), cfg.scan).size();
    strip_done_.assign(static_cast<std::size_t>(slots_),
                       std::vector<std::uint64_t>(strips, ZbtMemory::kNever));
    input_words_ = run_.transfer_in.total_words;
    const bool barrier = cfg.mode == AddressingMode::inter &&
                         cfg.timing.inter_transfer == InterTransfer::sequential;
    issue_from_ = barrier ? input_words_ : 0;
    threshold_ = std::min<std::uint64_t>(
        total_, static_cast<std::uint64_t>(
                    std::ceil(cfg.timing.result_switch_fraction * static_cast<double>(total_))));
    run_.output = Frame(a.width(), a.height());
    run_.transfer_out.words = 2 * total_;
  }

  EngineRun run() {
    if (total_ == 0) return std::move(run_);
    // Generous bound: every pixel costs at most a few dozen cycles even
    // with full port contention.
    const std::uint64_t watchdog = 64 * (input_words_ + 2 * total_) + 4096;
    Counters& c = run_.counters;
    for (std::uint64_t t = 0;; ++t) {
      bool bus_busy = false;
      host_step(t, bus_busy);
      for (int s = 0; s < slots_; ++s) input_txu_step(t, s);
      out_txu_.step(t);
      const PipelineStatus ps = pu_.step(t, t >= issue_from_);
      controller_step(t);

      c.bus_busy_cycles += bus_busy ? 1 : 0;
      c.compute_active_cycles += ps.executed ? 1 : 0;
      c.overlap_cycles += (ps.executed && bus_busy) ? 1 : 0;
      c.cycles_stalled += ps.stalled ? 1 : 0;

      if (words_out_ == 2 * total_) {
        c.cycles_total = t + 1;
        break;
      }
      if (t > watchdog) {
        throw_error(ErrorCode::protocol_violation,
                    "simulation made no progress by cycle " + std::to_string(t));
      }
    }
    finish();
    return std::move(run_);
  }

 private:
  void host_step(std::uint64_t t, bool& bus_busy) {
    if (words_in_ < input_words_) {
      transfer_in_word(t);
      bus_busy = true;
      return;
    }
    if (output_started_ && t >= run_.transfer_out.start_cycle && words_out_ < 2 * total_) {
      bus_busy = transfer_out_word(t);
    }
  }

  void transfer_in_word(std::uint64_t t) {
    const StripTransfer& st = run_.transfer_in.strips[strip_cursor_];
    const auto len = static_cast<std::uint64_t>(geo_.line_length());
    const int line = st.strip.first_line + static_cast<int>(pixel_in_strip_ / len);
    const int pos = static_cast<int>(pixel_in_strip_ % len);
    const Coord xy = geo_.to_xy(line, pos);
    const WordPair w = pack_pixel(inputs_[static_cast<std::size_t>(st.slot)]->at(xy.x, xy.y));
    ++words_in_;
    if (in_phase_ == 0) {
      // The DMA interface holds the lower word until its partner arrives,
      // then commits both halves to the bank pair in one cycle.
      pending_lower_ = w.lower;
      in_phase_ = 1;
    } else {
      const InputAddress addr = map_input_address(xy.x, xy.y, st.slot, geo_.width, geo_.height);
      zbt_.write(t, Unit::host_in, addr.bank_lower, addr.word, pending_lower_);
      zbt_.write(t, Unit::host_in, addr.bank_upper, addr.word, w.upper);
      in_phase_ = 0;
      ++pixel_in_strip_;
      if (2 * pixel_in_strip_ == st.words) {
        if (t != st.complete_cycle) {
          throw_error(ErrorCode::protocol_violation, "strip transfer drifted from its schedule");
        }
        strip_done_[static_cast<std::size_t>(st.slot)][static_cast<std::size_t>(st.strip.index)] = t;
        run_.events.push_back({t, ScheduleKind::strip_complete, st.slot, st.strip.index});
        ++strip_cursor_;
        pixel_in_strip_ = 0;
      }
    }
    if (words_in_ == input_words_) {
      run_.events.push_back({t, ScheduleKind::input_complete, -1, -1});
    }
  }

  bool transfer_out_word(std::uint64_t t) {
    const std::uint64_t k = words_out_ / 2;
    const std::uint64_t half = words_out_ % 2;
    const int bank = out_txu_.bank_of(k);
    if (bank < 0) return false;
    const auto addr = static_cast<std::uint32_t>(2 * k + half);
    if (!zbt_.written_before(bank, addr, t) || !zbt_.port_free(bank, t)) return false;
    const std::uint32_t word = zbt_.read(t, Unit::host_out, bank, addr);
    ++words_out_;
    if (half == 0) {
      out_lower_ = word;
    } else {
      const auto len = static_cast<std::uint64_t>(geo_.line_length());
      const Coord xy = geo_.to_xy(static_cast<int>(k / len), static_cast<int>(k % len));
      run_.output.at(xy.x, xy.y) = unpack_pixel({out_lower_, word});
    }
    if (words_out_ == 2 * total_) {
      run_.transfer_out.end_cycle = t;
      run_.events.push_back({t, ScheduleKind::output_complete, -1, -1});
    }
    return true;
  }

  void input_txu_step(std::uint64_t t, int slot) {
    LineFifo& fifo = iim_.fifo(slot);
    const auto target = fifo.fill_target();
    if (!target) return;
    const std::uint64_t done =
        strip_done_[static_cast<std::size_t>(slot)]
                   [static_cast<std::size_t>(target->line / kStripLines)];
    if (done == ZbtMemory::kNever || done >= t) return;
    const Coord xy = geo_.to_xy(target->line, target->pos);
    const InputAddress addr = map_input_address(xy.x, xy.y, slot, geo_.width, geo_.height);
    if (!zbt_.port_free(addr.bank_lower, t) || !zbt_.port_free(addr.bank_upper, t)) return;
    const Unit unit = slot == 0 ? Unit::txu_in0 : Unit::txu_in1;
    WordPair w;
    w.lower = zbt_.read(t, unit, addr.bank_lower, addr.word);
    w.upper = zbt_.read(t, unit, addr.bank_upper, addr.word);
    if (fifo.fill(t, w) && run_.trace.enabled) {
      run_.trace.residency.push_back({t, slot, target->line});
    }
  }

  // Image level controller: once the bus is free and enough of the result
  // sits in block A, switch result blocks and start the output DMA.
  void controller_step(std::uint64_t t) {
    if (output_started_ || words_in_ < input_words_) return;
    const std::uint64_t written = out_txu_.pixels_written();
    if (written < threshold_) return;
    output_started_ = true;
    run_.transfer_out.switch_pixel = written + (oim_pending_lower() ? 1 : 0);
    out_txu_.switch_bank();
    run_.transfer_out.bank_switches = 1;
    run_.transfer_out.start_cycle = t + 1;
    run_.events.push_back({t + 1, ScheduleKind::bank_switch, -1, -1});
    run_.events.push_back({t + 1, ScheduleKind::output_start, -1, -1});
  }

  bool oim_pending_lower() const {
    return out_txu_.bank_of(out_txu_.pixels_written()) >= 0;
  }

  void finish() {
    Counters& c = run_.counters;
    const PipelineStats ps = pu_.stats();
    c.zbt_read_events = ps.fetches;
    c.zbt_write_events = out_txu_.pixels_written();
    c.zbt_word_reads = zbt_.word_reads();
    c.zbt_word_writes = zbt_.word_writes();
    c.host_words_in = words_in_;
    c.host_words_out = words_out_;
    c.iim_fetches = ps.fetches;
    c.loads = ps.loads;
    c.shifts = ps.shifts;
    c.fetch_stall_cycles = ps.fetch_stall_cycles;
    c.oim_full_cycles = ps.oim_full_cycles;
    c.arbiter_conflicts = ps.arbiter_conflicts;

    run_.sad = pu_.sad();
    run_.table = pu_.table();

    RunLedger& l = run_.ledger;
    l.input_words = input_words_;
    l.output_start = run_.transfer_out.start_cycle;
    l.output_end = run_.transfer_out.end_cycle + 1;
    l.total_cycles = c.cycles_total;
    l.compute_active_cycles = c.compute_active_cycles;
    l.overlap_cycles = c.overlap_cycles;
    run_.timing = timing_report(l, cfg_.timing);
  }

  const EngineConfig& cfg_;
  std::array<const Frame*, 2> inputs_;
  int slots_;
  ScanGeometry geo_;
  std::uint64_t total_;
  EngineRun run_;
  ZbtMemory zbt_;
  Iim iim_;
  Oim oim_;
  ProcessUnit pu_;
  OutputTxu out_txu_;

  std::uint64_t input_words_ = 0;
  std::uint64_t words_in_ = 0;
  std::size_t strip_cursor_ = 0;
  std::uint64_t pixel_in_strip_ = 0;
  int in_phase_ = 0;
  std::uint32_t pending_lower_ = 0;
  std::vector<std::vector<std::uint64_t>> strip_done_;
  std::uint64_t issue_from_ = 0;

  bool output_started_ = false;
  std::uint64_t threshold_ = 0;
  std::uint64_t words_out_ = 0;
  std::uint32_t out_lower_ = 0;
};

}  // namespace

EngineRun run_engine(const EngineConfig& config, const Frame& a, const Frame* b) {
  validate(config, a, b);
  return Simulator(config, a, b).run();
}

}  // namespace ae::engine

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

#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "addrengine/engine/simulator.hpp"
#include "addrengine/errors.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ae;
using namespace ae::engine;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an ae::Error");
  return ErrorCode::invalid_argument;
}

EngineConfig intra_cfg(NeighborhoodMask m, Kernel k, ScanOrder scan = ScanOrder::horizontal) {
  EngineConfig c;
  c.mode = AddressingMode::intra;
  c.mask = std::move(m);
  c.kernel = std::move(k);
  c.scan = scan;
  return c;
}

// No two accesses to one bank in one cycle.
bool bank_discipline(const Trace& t) {
  std::map<std::pair<std::uint64_t, int>, int> seen;
  for (const AccessEvent& e : t.accesses) {
    if (++seen[{e.cycle, e.bank}] > 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("engine output matches the oracle on small frames") {
  std::mt19937 rng(41);
  const std::vector<NeighborhoodMask> masks{NeighborhoodMask::con0(), NeighborhoodMask::con8(),
                                            NeighborhoodMask::column(9),
                                            NeighborhoodMask::parse("0:-4,0:4,-2:1")};
  for (int trial = 0; trial < 6; ++trial) {
    const int w = 16 * (1 + trial % 3);
    const int h = 16 * (1 + (trial / 3) % 2);
    const Frame f = test::random_frame(w, h, rng);
    for (const auto& m : masks) {
      std::vector<double> taps(m.size(), 1.0 / static_cast<double>(m.size()));
      for (const Kernel& k : {Kernel::identity(ChannelSet::yuv()), Kernel::morph_gradient(),
                              Kernel::fir(taps, ChannelSet::yuv()),
                              Kernel::homogeneity(60), Kernel::histogram(ChannelSet::yuv())}) {
        const oracle::Result want = oracle::intra(f, m.offsets(), k);
        for (ScanOrder scan : {ScanOrder::horizontal, ScanOrder::vertical}) {
          const EngineRun run = run_engine(intra_cfg(m, k, scan), f);
          REQUIRE(run.output == want.frame);
          REQUIRE(oracle::same_table(want.table, run.table));
        }
      }
    }
  }
}

TEST_CASE("inter engine runs match the oracle in both transfer orders") {
  std::mt19937 rng(42);
  const Frame a = test::random_frame(48, 32, rng, 60000);
  const Frame b = test::random_frame(48, 32, rng, 60000);
  for (InterTransfer order : {InterTransfer::interleaved, InterTransfer::sequential}) {
    for (const Kernel& k : {Kernel::identity(), Kernel::diff(ChannelSet::yuv()),
                            Kernel::sad(ChannelSet::from_bits(0x1F))}) {
      for (ScanOrder scan : {ScanOrder::horizontal, ScanOrder::vertical}) {
        EngineConfig c;
        c.mode = AddressingMode::inter;
        c.mask = NeighborhoodMask::con8();
        c.kernel = k;
        c.scan = scan;
        c.timing.inter_transfer = order;
        const EngineRun run = run_engine(c, a, &b);
        const oracle::Result want = oracle::inter(a, b, k);
        REQUIRE(run.output == want.frame);
        REQUIRE(run.sad.value == want.sad());
        CHECK(run.counters.host_words_in == 2u * 2u * 48u * 32u);
      }
    }
  }
}

TEST_CASE("engine validation errors") {
  const Frame f(32, 32), g(32, 16), odd(32, 20);
  EngineConfig seg;
  seg.mode = AddressingMode::segment;
  CHECK(code_of([&] { run_engine(seg, f); }) == ErrorCode::unsupported_mode);

  EngineConfig inter;
  inter.mode = AddressingMode::inter;
  inter.kernel = Kernel::diff();
  CHECK(code_of([&] { run_engine(inter, f); }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] { run_engine(inter, f, &g); }) == ErrorCode::dimension_mismatch);
  inter.mask = NeighborhoodMask::column(9);
  CHECK(code_of([&] { run_engine(inter, f, &f); }) == ErrorCode::mask_span);
  inter.mask = NeighborhoodMask::con8();
  inter.kernel = Kernel::morph_gradient();
  CHECK(code_of([&] { run_engine(inter, f, &f); }) == ErrorCode::unsupported_mode);

  CHECK(code_of([&] { run_engine(intra_cfg(NeighborhoodMask::con8(), Kernel::sad()), f); }) ==
        ErrorCode::unsupported_mode);
  CHECK(code_of([&] { run_engine(intra_cfg(NeighborhoodMask::con8(), Kernel::identity()), odd); }) ==
        ErrorCode::non_divisible);
  const Frame big(512, 512);
  CHECK(code_of([&] { run_engine(intra_cfg(NeighborhoodMask::con0(), Kernel::identity()), big); }) ==
        ErrorCode::layout_overflow);
  EngineConfig bad = intra_cfg(NeighborhoodMask::con0(), Kernel::identity());
  bad.timing.result_switch_fraction = 1.5;
  CHECK(code_of([&] { run_engine(bad, f); }) == ErrorCode::invalid_argument);
}

TEST_CASE("counters and bank discipline") {
  std::mt19937 rng(43);
  const Frame f = test::random_frame(64, 48, rng);
  EngineConfig c = intra_cfg(NeighborhoodMask::con8(), Kernel::morph_gradient());
  c.record_trace = true;
  const EngineRun run = run_engine(c, f);
  const std::uint64_t n = 64 * 48;
  CHECK(run.counters.zbt_read_events == n);
  CHECK(run.counters.zbt_write_events == n);
  CHECK(run.counters.hardware_access_events() == 2 * n);
  CHECK(run.counters.host_words_in == 2 * n);
  CHECK(run.counters.host_words_out == 2 * n);
  // Host writes 2 words per pixel in, TxU reads 2; TxU writes 2 out, host reads 2.
  CHECK(run.counters.zbt_word_reads == 4 * n);
  CHECK(run.counters.zbt_word_writes == 4 * n);
  CHECK(run.counters.loads == 48);
  CHECK(run.counters.shifts == n - 48);
  CHECK(run.trace.accesses.size() == 8 * n);
  CHECK(bank_discipline(run.trace));
  CHECK(run.transfer_out.bank_switches == 1);

  std::uint64_t in_bank_a = 0, in_bank_b = 0;
  for (const AccessEvent& e : run.trace.accesses) {
    if (e.unit != Unit::txu_out) continue;
    (e.bank == kResultBankA ? in_bank_a : in_bank_b) += 1;
    CHECK((e.bank == kResultBankA || e.bank == kResultBankB));
  }
  CHECK(in_bank_a + in_bank_b == 2 * n);
  CHECK(in_bank_a == 2 * run.transfer_out.switch_pixel);
}

TEST_CASE("runs are deterministic") {
  std::mt19937 rng(44);
  const Frame a = test::random_frame(32, 32, rng);
  const Frame b = test::random_frame(32, 32, rng);
  EngineConfig c;
  c.mode = AddressingMode::inter;
  c.kernel = Kernel::sad();
  c.record_trace = true;
  const EngineRun r1 = run_engine(c, a, &b);
  const EngineRun r2 = run_engine(c, a, &b);
  std::ostringstream t1, t2;
  write_access_trace(r1.trace, t1);
  write_access_trace(r2.trace, t2);
  CHECK(t1.str() == t2.str());
  CHECK(r1.counters.cycles_total == r2.counters.cycles_total);
  CHECK(r1.timing.non_overlap_ratio == r2.timing.non_overlap_ratio);
  CHECK(t1.str().rfind("{\"cycle\":", 0) == 0);
}

TEST_CASE("fetch trace: one cycle per fetch, stalls only on missing lines") {
  std::mt19937 rng(45);
  const Frame f = test::random_frame(48, 64, rng);
  for (ScanOrder scan : {ScanOrder::horizontal, ScanOrder::vertical}) {
    const auto mask = scan == ScanOrder::horizontal
                          ? NeighborhoodMask::column(9)
                          : NeighborhoodMask::parse("0:-4,0:-3,0:-2,0:-1,0:0,0:1,0:2,0:3,0:4");
    EngineConfig c = intra_cfg(mask, Kernel::morph_gradient(), scan);
    c.record_trace = true;
    const EngineRun run = run_engine(c, f);
    std::map<int, std::uint64_t> resident;  // line -> cycle it completed
    for (const ResidencyEvent& e : run.trace.residency) resident[e.line] = e.cycle;

    std::uint64_t ok = 0;
    const FetchEvent* prev = nullptr;
    for (const FetchEvent& e : run.trace.fetches) {
      if (e.stalled) {
        REQUIRE(e.missing_line >= e.line_lo);
        REQUIRE(e.missing_line <= e.line_hi);
        REQUIRE(resident.count(e.missing_line) == 1);
        REQUIRE(resident[e.missing_line] >= e.cycle);
      } else {
        ++ok;
        for (int l = e.line_lo; l <= e.line_hi; ++l) REQUIRE(resident[l] < e.cycle);
      }
      // A pixel's attempts are consecutive cycles; the next pixel starts after.
      if (prev) {
        REQUIRE(e.cycle == prev->cycle + 1);
        REQUIRE(e.pixel == prev->pixel + (prev->stalled ? 0 : 1));
      }
      prev = &e;
    }
    CHECK(ok == 48u * 64u);
  }
}

TEST_CASE("intra runs are transfer-bound") {
  std::mt19937 rng(46);
  const Frame f = test::random_frame(176, 144, rng);
  const EngineRun run = run_engine(intra_cfg(NeighborhoodMask::con0(), Kernel::identity()), f);
  CHECK(run.timing.transfer_cycles == 2u * 176u * 144u);
  CHECK(run.timing.compute_only_cycles == 0);
  CHECK(run.timing.overlap_fraction > 0.95);
  CHECK(run.timing.output_transfer_cycles == 2u * 176u * 144u);
  CHECK(run.timing.total_cycles == run.ledger.output_end);
}

TEST_CASE("worst-case inter compute-only time") {
  std::mt19937 rng(47);
  const Frame a = test::random_frame(176, 144, rng);
  const Frame b = test::random_frame(176, 144, rng);
  EngineConfig c;
  c.mode = AddressingMode::inter;
  c.kernel = Kernel::sad();
  c.timing.inter_transfer = InterTransfer::sequential;
  const EngineRun run = run_engine(c, a, &b);
  const std::uint64_t n = 176 * 144;
  // Processing starts after the last input word and must fill a quarter of
  // the result (two words per pixel) before the host may read: N/4 pixels at
  // one word per cycle each, plus the pipeline and TxU latency.
  CHECK(run.timing.transfer_cycles == 4 * n);
  CHECK(run.timing.compute_only_cycles == 2 * (n / 4) + 4);
  CHECK(run.timing.non_overlap_ratio == doctest::Approx(0.125).epsilon(0.001));

  c.timing.result_switch_fraction = 0.5;
  CHECK(run_engine(c, a, &b).timing.non_overlap_ratio == doctest::Approx(0.25).epsilon(0.001));
}

TEST_CASE("timing report arithmetic") {
  RunLedger l;
  l.input_words = 1000;
  l.output_start = 1125;
  l.output_end = 2000;
  l.total_cycles = 2000;
  l.compute_active_cycles = 400;
  l.overlap_cycles = 100;
  TimingConfig t;
  const TimingReport r = timing_report(l, t);
  CHECK(r.compute_only_cycles == 125);
  CHECK(r.non_overlap_ratio == doctest::Approx(0.125));
  CHECK(r.overlap_fraction == doctest::Approx(0.25));
  CHECK(r.output_transfer_cycles == 875);
  CHECK(r.seconds == doctest::Approx(2000 / 66.0e6));
  const TimingReport z = timing_report(RunLedger{}, t);
  CHECK(z.total_cycles == 0);
  CHECK(z.non_overlap_ratio == 0.0);
}

TEST_CASE("zero-pixel frame gives an all-zero run") {
  const Frame empty(0, 0);
  const EngineRun run = run_engine(intra_cfg(NeighborhoodMask::con8(), Kernel::identity()), empty);
  CHECK(run.counters.cycles_total == 0);
  CHECK(run.counters.hardware_access_events() == 0);
  CHECK(run.timing.total_cycles == 0);
  CHECK(run.timing.transfer_cycles == 0);
  CHECK(run.timing.non_overlap_ratio == 0.0);
  CHECK(run.output.pixel_count() == 0);
}

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

#include "addrengine/addrengine.h"

#include <fstream>
#include <new>
#include <optional>
#include <string>
#include <variant>

#include "addrengine/addresslib.hpp"
#include "addrengine/baseline.hpp"
#include "addrengine/engine/simulator.hpp"
#include "addrengine/errors.hpp"
#include "addrengine/frame.hpp"
#include "addrengine/kernels.hpp"

struct ae_frame {
  ae::Frame f;
};
struct ae_mask {
  ae::NeighborhoodMask m;
};
struct ae_kernel {
  ae::Kernel k;
};
struct ae_result {
  ae_frame frame;
  ae::SadAccumulator sad;
  ae::IndexedTable table;
  std::vector<ae::Coord> visits;
  std::optional<ae::engine::EngineRun> run;  // output frame moved into `frame`
};

static_assert(static_cast<int>(ae::KernelOp::homogeneity) == AE_OP_HOMOGENEITY);
static_assert(static_cast<int>(ae::KernelOp::fir) == AE_OP_FIR);
static_assert(static_cast<int>(ae::AddressingMode::segment) == AE_MODE_SEGMENT);
static_assert(static_cast<int>(ae::ScanOrder::vertical) == AE_SCAN_VERTICAL);
static_assert(static_cast<int>(ae::ErrorCode::out_of_range) == AE_ERR_OUT_OF_RANGE);

namespace {

thread_local std::string g_last_error;

ae_status fail(ae_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs `f`, translating exceptions into status codes.
template <typename F>
ae_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return AE_OK;
  } catch (const ae::Error& e) {
    return fail(static_cast<ae_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(AE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AE_ERR_INTERNAL, e.what());
  }
}

#define AE_REQUIRE(cond, what) \
  if (!(cond)) return fail(AE_ERR_INVALID_ARGUMENT, what)

ae::Pixel to_pixel(ae_pixel p) { return {p.y, p.u, p.v, p.alfa, p.aux}; }
ae_pixel from_pixel(const ae::Pixel& p) { return {p.y, p.u, p.v, p.alfa, p.aux}; }

ae::ChannelSet channels(std::uint32_t bits) {
  if ((bits & ~0x1Fu) != 0) ae::throw_error(ae::ErrorCode::invalid_argument, "unknown channel bits");
  return ae::ChannelSet::from_bits(bits);
}

ae::FrameFormat to_format(ae_frame_format f) {
  switch (f) {
    case AE_FORMAT_RAW_PLANAR: return ae::FrameFormat::raw_planar;
    case AE_FORMAT_GRAYMAP: return ae::FrameFormat::graymap;
  }
  ae::throw_error(ae::ErrorCode::invalid_argument, "unknown frame format");
}

ae::AddressingMode to_mode(ae_mode m) {
  if (m < AE_MODE_INTER || m > AE_MODE_SEGMENT) {
    ae::throw_error(ae::ErrorCode::invalid_argument, "unknown addressing mode");
  }
  return static_cast<ae::AddressingMode>(m);
}

ae::ScanOrder to_scan(ae_scan s) {
  if (s != AE_SCAN_HORIZONTAL && s != AE_SCAN_VERTICAL) {
    ae::throw_error(ae::ErrorCode::invalid_argument, "unknown scan order");
  }
  return static_cast<ae::ScanOrder>(s);
}

ae::engine::TimingConfig to_timing(const ae_timing_config& t) {
  ae::engine::TimingConfig c;
  c.clock_hz = t.clock_hz;
  c.bytes_per_word = t.bytes_per_word;
  c.result_switch_fraction = t.result_switch_fraction;
  c.inter_transfer = t.inter_transfer == AE_INTER_SEQUENTIAL
                         ? ae::engine::InterTransfer::sequential
                         : ae::engine::InterTransfer::interleaved;
  return c;
}

ae_result* from_scan(ae::ScanOutput&& s) {
  auto* r = new ae_result;
  r->frame.f = std::move(s.frame);
  r->sad = s.sad;
  r->table = std::move(s.table);
  return r;
}

}  // namespace

extern "C" {

ae_word_pair ae_pack_pixel(ae_pixel p) {
  const ae::WordPair w = ae::pack_pixel(to_pixel(p));
  return {w.lower, w.upper};
}

ae_status ae_unpack_pixel(ae_word_pair w, ae_pixel* out) {
  AE_REQUIRE(out, "null output");
  return guarded([&] { *out = from_pixel(ae::unpack_pixel({w.lower, w.upper})); });
}

ae_status ae_frame_create(int width, int height, ae_frame** out) {
  AE_REQUIRE(out, "null output");
  AE_REQUIRE(width >= 0 && height >= 0, "negative frame size");
  return guarded([&] { *out = new ae_frame{ae::Frame(width, height)}; });
}

ae_status ae_frame_clone(const ae_frame* f, ae_frame** out) {
  AE_REQUIRE(f && out, "null argument");
  return guarded([&] { *out = new ae_frame{f->f}; });
}

void ae_frame_destroy(ae_frame* f) { delete f; }

int ae_frame_width(const ae_frame* f) { return f ? f->f.width() : 0; }
int ae_frame_height(const ae_frame* f) { return f ? f->f.height() : 0; }

ae_status ae_frame_get(const ae_frame* f, int x, int y, ae_pixel* out) {
  AE_REQUIRE(f && out, "null argument");
  if (!f->f.contains(x, y)) return fail(AE_ERR_OUT_OF_RANGE, "pixel outside the frame");
  *out = from_pixel(f->f.at(x, y));
  return AE_OK;
}

ae_status ae_frame_set(ae_frame* f, int x, int y, ae_pixel p) {
  AE_REQUIRE(f, "null frame");
  if (!f->f.contains(x, y)) return fail(AE_ERR_OUT_OF_RANGE, "pixel outside the frame");
  f->f.at(x, y) = to_pixel(p);
  return AE_OK;
}

uint64_t ae_frame_byte_size(int width, int height) { return ae::frame_byte_size(width, height); }

ae_status ae_frame_load(const char* path, ae_frame_format fmt, int width, int height,
                        ae_frame** out) {
  AE_REQUIRE(path && out, "null argument");
  return guarded([&] {
    std::optional<int> w, h;
    if (width > 0) w = width;
    if (height > 0) h = height;
    *out = new ae_frame{ae::load_frame(path, to_format(fmt), w, h)};
  });
}

ae_status ae_frame_save(const ae_frame* f, const char* path, ae_frame_format fmt) {
  AE_REQUIRE(f && path, "null argument");
  return guarded([&] { ae::save_frame(f->f, path, to_format(fmt)); });
}

int ae_frame_equal(const ae_frame* a, const ae_frame* b) {
  return a && b && a->f == b->f ? 1 : 0;
}

ae_status ae_mask_parse(const char* text, ae_mask** out) {
  AE_REQUIRE(text && out, "null argument");
  return guarded([&] { *out = new ae_mask{ae::NeighborhoodMask::parse(text)}; });
}

ae_status ae_mask_create(const int* dy, const int* dx, size_t count, ae_mask** out) {
  AE_REQUIRE(out && (count == 0 || (dy && dx)), "null argument");
  return guarded([&] {
    std::vector<ae::Offset> offs;
    for (size_t i = 0; i < count; ++i) offs.push_back({dy[i], dx[i]});
    *out = new ae_mask{ae::NeighborhoodMask::custom(std::move(offs))};
  });
}

void ae_mask_destroy(ae_mask* m) { delete m; }
size_t ae_mask_size(const ae_mask* m) { return m ? m->m.size() : 0; }
int ae_mask_vertical_span(const ae_mask* m) { return m ? m->m.vertical_span() : 0; }
int ae_mask_horizontal_span(const ae_mask* m) { return m ? m->m.horizontal_span() : 0; }

ae_kernel_desc ae_kernel_desc_default(ae_kernel_op op) {
  ae_kernel_desc d{};
  d.op = op;
  d.in_channels = AE_CH_Y;
  d.out_channels = op == AE_OP_HISTOGRAM ? 0u : static_cast<uint32_t>(AE_CH_Y);
  return d;
}

ae_status ae_kernel_create(const ae_kernel_desc* desc, ae_kernel** out) {
  AE_REQUIRE(desc && out, "null argument");
  AE_REQUIRE(desc->op >= AE_OP_IDENTITY && desc->op <= AE_OP_HOMOGENEITY, "unknown kernel op");
  AE_REQUIRE(desc->coeff_count == 0 || desc->coeffs, "null coefficients");
  return guarded([&] {
    ae::Kernel k;
    k.op = static_cast<ae::KernelOp>(desc->op);
    k.in_channels = channels(desc->in_channels);
    k.out_channels = channels(desc->out_channels);
    k.coeffs.assign(desc->coeffs, desc->coeffs + desc->coeff_count);
    k.threshold = desc->threshold;
    *out = new ae_kernel{std::move(k)};
  });
}

void ae_kernel_destroy(ae_kernel* k) { delete k; }

const char* ae_kernel_op_name(ae_kernel_op op) {
  if (op < AE_OP_IDENTITY || op > AE_OP_HOMOGENEITY) return "unknown";
  // Names are string literals, so the view is NUL-terminated.
  return ae::kernel_op_name(static_cast<ae::KernelOp>(op)).data();
}

ae_status ae_kernel_op_parse(const char* name, ae_kernel_op* out) {
  AE_REQUIRE(name && out, "null argument");
  const auto op = ae::parse_kernel_op(name);
  if (!op) return fail(AE_ERR_INVALID_ARGUMENT, std::string("unknown kernel op: ") + name);
  *out = static_cast<ae_kernel_op>(*op);
  return AE_OK;
}

ae_status ae_intra_scan(const ae_frame* src, const ae_mask* mask, ae_scan scan,
                        const ae_kernel* k, ae_result** out) {
  AE_REQUIRE(src && mask && k && out, "null argument");
  return guarded(
      [&] { *out = from_scan(ae::intra_scan(src->f, mask->m, to_scan(scan), k->k)); });
}

ae_status ae_inter_scan(const ae_frame* a, const ae_frame* b, const ae_kernel* k,
                        ae_scan scan, ae_result** out) {
  AE_REQUIRE(a && b && k && out, "null argument");
  return guarded([&] { *out = from_scan(ae::inter_scan(a->f, b->f, k->k, to_scan(scan))); });
}

ae_status ae_segment_scan(const ae_frame* src, const ae_segment_criteria* crit,
                          const ae_mask* mask, const ae_kernel* k, ae_result** out) {
  AE_REQUIRE(src && crit && mask && k && out, "null argument");
  AE_REQUIRE(crit->seed_count == 0 || crit->seeds, "null seeds");
  return guarded([&] {
    ae::SegmentCriteria c;
    c.channels = channels(crit->channels);
    c.threshold = crit->threshold;
    for (size_t i = 0; i < crit->seed_count; ++i) c.seeds.push_back({crit->seeds[i].x, crit->seeds[i].y});
    ae::SegmentOutput s = ae::segment_scan(src->f, c, mask->m, k->k);
    auto* r = new ae_result;
    r->frame.f = std::move(s.frame);
    r->table = std::move(s.table);
    r->visits = std::move(s.visit_order);
    *out = r;
  });
}

ae_timing_config ae_timing_config_default(void) {
  const ae::engine::TimingConfig d;
  return {d.clock_hz, d.bytes_per_word, d.result_switch_fraction, AE_INTER_INTERLEAVED};
}

ae_engine_config ae_engine_config_default(void) {
  ae_engine_config c{};
  c.mode = AE_MODE_INTRA;
  c.scan = AE_SCAN_HORIZONTAL;
  c.timing = ae_timing_config_default();
  return c;
}

ae_status ae_engine_run(const ae_engine_config* cfg, const ae_frame* a, const ae_frame* b,
                        ae_result** out) {
  AE_REQUIRE(cfg && a && out, "null argument");
  if (cfg->mode != AE_MODE_INTER && b != nullptr) {
    return fail(AE_ERR_INVALID_ARGUMENT, "a second frame is only used by inter addressing");
  }
  return guarded([&] {
    ae::engine::EngineConfig c;
    c.mode = to_mode(cfg->mode);
    c.scan = to_scan(cfg->scan);
    if (cfg->mask) c.mask = cfg->mask->m;
    if (cfg->kernel) c.kernel = cfg->kernel->k;
    c.timing = to_timing(cfg->timing);
    c.record_trace = cfg->record_trace != 0;
    ae::engine::EngineRun run = ae::engine::run_engine(c, a->f, b ? &b->f : nullptr);
    auto* r = new ae_result;
    r->frame.f = std::move(run.output);
    r->sad = run.sad;
    r->table = run.table;
    r->run = std::move(run);
    *out = r;
  });
}

void ae_result_destroy(ae_result* r) { delete r; }

const ae_frame* ae_result_frame(const ae_result* r) { return r ? &r->frame : nullptr; }

ae_status ae_result_sad(const ae_result* r, uint32_t* value, int* saturated) {
  AE_REQUIRE(r, "null result");
  if (value) *value = r->sad.value;
  if (saturated) *saturated = r->sad.saturated ? 1 : 0;
  return AE_OK;
}

size_t ae_result_table_size(const ae_result* r) { return r ? r->table.size() : 0; }

ae_status ae_result_table_record(const ae_result* r, size_t i, ae_table_record* out) {
  AE_REQUIRE(r && out, "null argument");
  if (i >= r->table.size()) return fail(AE_ERR_OUT_OF_RANGE, "table index out of range");
  auto it = r->table.records().begin();
  std::advance(it, static_cast<std::ptrdiff_t>(i));
  *out = {it->first, it->second.count, it->second.sum_y, it->second.sum_u, it->second.sum_v};
  return AE_OK;
}

size_t ae_result_visit_count(const ae_result* r) { return r ? r->visits.size() : 0; }

ae_status ae_result_visit(const ae_result* r, size_t i, ae_seed* out) {
  AE_REQUIRE(r && out, "null argument");
  if (i >= r->visits.size()) return fail(AE_ERR_OUT_OF_RANGE, "visit index out of range");
  *out = {r->visits[i].x, r->visits[i].y};
  return AE_OK;
}

ae_status ae_result_counters(const ae_result* r, ae_counters* out) {
  AE_REQUIRE(r && out, "null argument");
  if (!r->run) return fail(AE_ERR_UNSUPPORTED_MODE, "not an engine result");
  const auto& c = r->run->counters;
  *out = {c.zbt_read_events,  c.zbt_write_events,   c.zbt_word_reads,
          c.zbt_word_writes,  c.host_words_in,      c.host_words_out,
          c.cycles_total,     c.cycles_stalled,     c.compute_active_cycles,
          c.overlap_cycles,   c.bus_busy_cycles,    c.loads,
          c.shifts,           c.fetch_stall_cycles, c.oim_full_cycles,
          c.arbiter_conflicts};
  return AE_OK;
}

ae_status ae_result_timing(const ae_result* r, ae_timing_report* out) {
  AE_REQUIRE(r && out, "null argument");
  if (!r->run) return fail(AE_ERR_UNSUPPORTED_MODE, "not an engine result");
  const auto& t = r->run->timing;
  *out = {t.total_cycles,       t.transfer_cycles,   t.output_transfer_cycles,
          t.compute_only_cycles, r->run->ledger.output_start, t.overlap_fraction,
          t.non_overlap_ratio,  t.seconds};
  return AE_OK;
}

ae_status ae_result_write_trace(const ae_result* r, const char* path) {
  AE_REQUIRE(r && path, "null argument");
  if (!r->run) return fail(AE_ERR_UNSUPPORTED_MODE, "not an engine result");
  if (!r->run->trace.enabled) return fail(AE_ERR_INVALID_ARGUMENT, "run was not traced");
  return guarded([&] {
    std::ofstream out(path);
    if (!out) ae::throw_error(ae::ErrorCode::io, std::string("cannot open ") + path);
    ae::engine::write_access_trace(r->run->trace, out);
    if (!out) ae::throw_error(ae::ErrorCode::io, std::string("write failed: ") + path);
  });
}

ae_status ae_plan_strips(int width, int height, ae_scan scan, ae_strip* out, size_t cap,
                         size_t* count) {
  AE_REQUIRE(count && (cap == 0 || out), "null argument");
  return guarded([&] {
    const auto strips = ae::engine::plan_strips(width, height, to_scan(scan));
    *count = strips.size();
    for (size_t i = 0; i < strips.size() && i < cap; ++i) {
      out[i] = {strips[i].index, strips[i].first_line, strips[i].lines,
                strips[i].block == ae::engine::Block::a ? 0 : 1};
    }
  });
}

ae_status ae_count_software_accesses(ae_mode mode, const ae_mask* mask, uint32_t in_channels,
                                     uint32_t out_channels, int width, int height,
                                     uint64_t* out) {
  AE_REQUIRE(mask && out, "null argument");
  return guarded([&] {
    *out = ae::baseline::count_software_accesses(to_mode(mode), mask->m, channels(in_channels),
                                                 channels(out_channels), width, height);
  });
}

ae_status ae_count_hardware_accesses(ae_mode mode, const ae_mask* mask, uint32_t ch,
                                     int width, int height, uint64_t* out) {
  AE_REQUIRE(mask && out, "null argument");
  return guarded([&] {
    *out = ae::baseline::count_hardware_accesses(to_mode(mode), mask->m, channels(ch), width,
                                                 height);
  });
}

ae_status ae_saving(uint64_t sw, uint64_t hw, double* rel_software, double* rel_hardware) {
  AE_REQUIRE(rel_software && rel_hardware, "null argument");
  return guarded([&] {
    const ae::baseline::Saving s = ae::baseline::saving(sw, hw);
    *rel_software = s.relative_to_software;
    *rel_hardware = s.relative_to_hardware;
  });
}

const char* ae_status_name(ae_status s) {
  if (s == AE_OK) return "ok";
  if (s == AE_ERR_INTERNAL) return "internal-error";
  return ae::error_code_name(static_cast<ae::ErrorCode>(s));
}

const char* ae_last_error(void) { return g_last_error.c_str(); }

const char* ae_version(void) { return "0.1.0"; }

}  // extern "C"

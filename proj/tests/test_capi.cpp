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

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "addrengine/addrengine.h"

namespace {

ae_frame* make_frame(int w, int h, unsigned seed) {
  ae_frame* f = nullptr;
  REQUIRE(ae_frame_create(w, h, &f) == AE_OK);
  unsigned s = seed;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      s = s * 1103515245u + 12345u;
      ae_pixel p{static_cast<uint8_t>(s >> 16), static_cast<uint8_t>(s >> 8),
                 static_cast<uint8_t>(s >> 4), static_cast<uint16_t>((s >> 20) % 4),
                 static_cast<uint16_t>(s)};
      REQUIRE(ae_frame_set(f, x, y, p) == AE_OK);
    }
  }
  return f;
}

}  // namespace

TEST_CASE("C API: pixels and frames") {
  const ae_word_pair w = ae_pack_pixel({1, 2, 3, 4, 5});
  CHECK(w.lower == 0x030201u);
  CHECK(w.upper == 0x50004u);
  ae_pixel p;
  CHECK(ae_unpack_pixel({0xFF000000u, 0}, &p) == AE_ERR_MALFORMED_WORD);
  CHECK(std::strlen(ae_last_error()) > 0);
  CHECK(ae_unpack_pixel(w, &p) == AE_OK);
  CHECK(p.aux == 5);
  CHECK(ae_frame_byte_size(352, 288) == 811'008u);

  ae_frame* f = make_frame(4, 4, 1);
  CHECK(ae_frame_get(f, 4, 0, &p) == AE_ERR_OUT_OF_RANGE);
  CHECK(ae_frame_create(-1, 2, &f) == AE_ERR_INVALID_ARGUMENT);
  ae_frame* g = nullptr;
  REQUIRE(ae_frame_clone(f, &g) == AE_OK);
  CHECK(ae_frame_equal(f, g) == 1);
  ae_frame_set(g, 0, 0, {9, 9, 9, 9, 9});
  CHECK(ae_frame_equal(f, g) == 0);

  const auto dir = std::filesystem::temp_directory_path() / "addrengine-capi";
  std::filesystem::create_directories(dir);
  const std::string raw = (dir / "f.raw").string();
  REQUIRE(ae_frame_save(f, raw.c_str(), AE_FORMAT_RAW_PLANAR) == AE_OK);
  ae_frame* h = nullptr;
  REQUIRE(ae_frame_load(raw.c_str(), AE_FORMAT_RAW_PLANAR, 4, 4, &h) == AE_OK);
  CHECK(ae_frame_equal(f, h) == 1);
  CHECK(ae_frame_load(raw.c_str(), AE_FORMAT_RAW_PLANAR, 5, 4, &h) == AE_ERR_SIZE_MISMATCH);
  CHECK(ae_frame_load("/nonexistent/f.pgm", AE_FORMAT_GRAYMAP, 0, 0, &h) == AE_ERR_IO);
  std::filesystem::remove_all(dir);
  ae_frame_destroy(f);
  ae_frame_destroy(g);
  ae_frame_destroy(h);
}

TEST_CASE("C API: masks and kernels") {
  ae_mask* m = nullptr;
  CHECK(ae_mask_parse("0:9", &m) == AE_ERR_MASK_SPAN);
  REQUIRE(ae_mask_parse("con8", &m) == AE_OK);
  CHECK(ae_mask_size(m) == 9);
  CHECK(ae_mask_vertical_span(m) == 3);
  ae_mask_destroy(m);
  const int dy[] = {-4, 0, 4};
  const int dx[] = {0, 0, 0};
  REQUIRE(ae_mask_create(dy, dx, 3, &m) == AE_OK);
  CHECK(ae_mask_vertical_span(m) == 9);
  ae_mask_destroy(m);

  ae_kernel_op op;
  CHECK(ae_kernel_op_parse("morph_gradient", &op) == AE_OK);
  CHECK(op == AE_OP_MORPH_GRADIENT);
  CHECK(std::string(ae_kernel_op_name(AE_OP_SAD_ACCUMULATE)) == "sad");
  CHECK(ae_kernel_op_parse("median", &op) == AE_ERR_INVALID_ARGUMENT);
  ae_kernel_desc d = ae_kernel_desc_default(AE_OP_FIR);
  d.in_channels = 1u << 7;
  ae_kernel* k = nullptr;
  CHECK(ae_kernel_create(&d, &k) == AE_ERR_INVALID_ARGUMENT);
  CHECK(std::string(ae_status_name(AE_ERR_MASK_SPAN)) == "mask-span");
  CHECK(std::string(ae_version()).size() > 0);
}

TEST_CASE("C API: engine run matches the reference scan") {
  ae_frame* f = make_frame(32, 32, 7);
  ae_mask* m = nullptr;
  REQUIRE(ae_mask_parse("con8", &m) == AE_OK);
  ae_kernel_desc d = ae_kernel_desc_default(AE_OP_MORPH_GRADIENT);
  d.in_channels = d.out_channels = AE_CH_YUV;
  ae_kernel* k = nullptr;
  REQUIRE(ae_kernel_create(&d, &k) == AE_OK);

  ae_result* ref = nullptr;
  REQUIRE(ae_intra_scan(f, m, AE_SCAN_HORIZONTAL, k, &ref) == AE_OK);
  ae_engine_config cfg = ae_engine_config_default();
  cfg.mask = m;
  cfg.kernel = k;
  cfg.record_trace = 1;
  ae_result* run = nullptr;
  REQUIRE(ae_engine_run(&cfg, f, nullptr, &run) == AE_OK);
  CHECK(ae_frame_equal(ae_result_frame(ref), ae_result_frame(run)) == 1);

  ae_counters c;
  REQUIRE(ae_result_counters(run, &c) == AE_OK);
  CHECK(c.zbt_read_events + c.zbt_write_events == 2u * 32u * 32u);
  ae_timing_report t;
  REQUIRE(ae_result_timing(run, &t) == AE_OK);
  CHECK(t.transfer_cycles == 2u * 32u * 32u);
  CHECK(ae_result_counters(ref, &c) == AE_ERR_UNSUPPORTED_MODE);

  const auto path = std::filesystem::temp_directory_path() / "addrengine-capi-trace.jsonl";
  REQUIRE(ae_result_write_trace(run, path.string().c_str()) == AE_OK);
  std::ifstream in(path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line.find("\"unit\":\"host_in\"") != std::string::npos);
  std::filesystem::remove(path);

  cfg.mode = AE_MODE_SEGMENT;
  ae_result* bad = nullptr;
  CHECK(ae_engine_run(&cfg, f, nullptr, &bad) == AE_ERR_UNSUPPORTED_MODE);
  cfg.mode = AE_MODE_INTRA;
  CHECK(ae_engine_run(&cfg, f, f, &bad) == AE_ERR_INVALID_ARGUMENT);

  ae_result_destroy(ref);
  ae_result_destroy(run);
  ae_kernel_destroy(k);
  ae_mask_destroy(m);
  ae_frame_destroy(f);
}

TEST_CASE("C API: segment scan, strips, access counts") {
  ae_frame* f = nullptr;
  REQUIRE(ae_frame_create(5, 1, &f) == AE_OK);
  ae_mask* m = nullptr;
  REQUIRE(ae_mask_parse("con8", &m) == AE_OK);
  ae_kernel_desc d = ae_kernel_desc_default(AE_OP_IDENTITY);
  ae_kernel* k = nullptr;
  REQUIRE(ae_kernel_create(&d, &k) == AE_OK);
  const ae_seed seeds[] = {{2, 0}};
  ae_segment_criteria crit{AE_CH_Y, 0, seeds, 1};
  ae_result* r = nullptr;
  REQUIRE(ae_segment_scan(f, &crit, m, k, &r) == AE_OK);
  REQUIRE(ae_result_visit_count(r) == 5);
  ae_seed s;
  // Order 2, 1, 3, 0, 4: left neighbors are enqueued before right ones.
  REQUIRE(ae_result_visit(r, 3, &s) == AE_OK);
  CHECK(s.x == 0);
  REQUIRE(ae_result_visit(r, 4, &s) == AE_OK);
  CHECK(s.x == 4);
  CHECK(ae_result_visit(r, 5, &s) == AE_ERR_OUT_OF_RANGE);
  ae_result_destroy(r);
  crit.seed_count = 0;
  CHECK(ae_segment_scan(f, &crit, m, k, &r) == AE_ERR_EMPTY_SEEDS);

  ae_strip strips[32];
  size_t n = 0;
  REQUIRE(ae_plan_strips(352, 288, AE_SCAN_HORIZONTAL, strips, 32, &n) == AE_OK);
  CHECK(n == 18);
  CHECK(strips[17].block == 1);
  CHECK(ae_plan_strips(352, 280, AE_SCAN_HORIZONTAL, strips, 32, &n) == AE_ERR_NON_DIVISIBLE);

  uint64_t sw = 0, hw = 0;
  REQUIRE(ae_count_software_accesses(AE_MODE_INTRA, m, AE_CH_YUV, AE_CH_YUV, 352, 288, &sw) == AE_OK);
  REQUIRE(ae_count_hardware_accesses(AE_MODE_INTRA, m, AE_CH_YUV, 352, 288, &hw) == AE_OK);
  CHECK(sw == 608'256u);
  CHECK(hw == 202'752u);
  double a = 0, b = 0;
  REQUIRE(ae_saving(sw, hw, &a, &b) == AE_OK);
  CHECK(b == doctest::Approx(200.0));
  CHECK(ae_saving(sw, 0, &a, &b) == AE_ERR_ZERO_HARDWARE);

  ae_kernel_destroy(k);
  ae_mask_destroy(m);
  ae_frame_destroy(f);
}

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

/* C interface to the address engine library. All objects are opaque
 * handles owned by the caller and released with the matching _destroy call.
 * Functions return AE_OK or an error status; ae_last_error() holds the
 * message of the most recent failure on the calling thread. */
#ifndef ADDRENGINE_H_
#define ADDRENGINE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(AE_BUILDING_LIBRARY)
#    define AE_API __declspec(dllexport)
#  else
#    define AE_API __declspec(dllimport)
#  endif
#else
#  define AE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ae_status {
  AE_OK = 0,
  AE_ERR_INVALID_ARGUMENT = 1,
  AE_ERR_MALFORMED_WORD = 2,
  AE_ERR_SIZE_MISMATCH = 3,
  AE_ERR_MALFORMED_HEADER = 4,
  AE_ERR_IO = 5,
  AE_ERR_MASK_SPAN = 6,
  AE_ERR_DIMENSION_MISMATCH = 7,
  AE_ERR_UNSUPPORTED_MODE = 8,
  AE_ERR_NON_DIVISIBLE = 9,
  AE_ERR_LAYOUT_OVERFLOW = 10,
  AE_ERR_PROTOCOL_VIOLATION = 11,
  AE_ERR_ZERO_HARDWARE = 12,
  AE_ERR_EMPTY_SEEDS = 13,
  AE_ERR_SEED_OUTSIDE = 14,
  AE_ERR_OUT_OF_RANGE = 15,
  AE_ERR_INTERNAL = 99
} ae_status;

typedef struct ae_pixel {
  uint8_t y, u, v;
  uint16_t alfa, aux;
} ae_pixel;

/* lower = Y | U << 8 | V << 16 (bits 24..31 zero), upper = Alfa | Aux << 16 */
typedef struct ae_word_pair {
  uint32_t lower;
  uint32_t upper;
} ae_word_pair;

enum {
  AE_CH_Y = 1u << 0,
  AE_CH_U = 1u << 1,
  AE_CH_V = 1u << 2,
  AE_CH_ALFA = 1u << 3,
  AE_CH_AUX = 1u << 4,
  AE_CH_YUV = AE_CH_Y | AE_CH_U | AE_CH_V
};

typedef enum ae_mode { AE_MODE_INTER = 0, AE_MODE_INTRA = 1, AE_MODE_SEGMENT = 2 } ae_mode;
typedef enum ae_scan { AE_SCAN_HORIZONTAL = 0, AE_SCAN_VERTICAL = 1 } ae_scan;
typedef enum ae_frame_format { AE_FORMAT_RAW_PLANAR = 0, AE_FORMAT_GRAYMAP = 1 } ae_frame_format;

typedef enum ae_kernel_op {
  AE_OP_IDENTITY = 0,
  AE_OP_DIFF = 1,
  AE_OP_SAD_ACCUMULATE = 2,
  AE_OP_MORPH_GRADIENT = 3,
  AE_OP_FIR = 4,
  AE_OP_HISTOGRAM = 5,
  AE_OP_HOMOGENEITY = 6
} ae_kernel_op;

typedef enum ae_inter_transfer {
  AE_INTER_INTERLEAVED = 0,
  AE_INTER_SEQUENTIAL = 1 /* all of frame a, then all of b */
} ae_inter_transfer;

typedef struct ae_frame ae_frame;
typedef struct ae_mask ae_mask;
typedef struct ae_kernel ae_kernel;
typedef struct ae_result ae_result;

/* ---- pixels and frames ---- */

AE_API ae_word_pair ae_pack_pixel(ae_pixel p);
AE_API ae_status ae_unpack_pixel(ae_word_pair w, ae_pixel* out);

AE_API ae_status ae_frame_create(int width, int height, ae_frame** out);
AE_API ae_status ae_frame_clone(const ae_frame* f, ae_frame** out);
AE_API void ae_frame_destroy(ae_frame* f);
AE_API int ae_frame_width(const ae_frame* f);
AE_API int ae_frame_height(const ae_frame* f);
AE_API ae_status ae_frame_get(const ae_frame* f, int x, int y, ae_pixel* out);
AE_API ae_status ae_frame_set(ae_frame* f, int x, int y, ae_pixel p);
/* Packed size: 8 bytes per pixel. */
AE_API uint64_t ae_frame_byte_size(int width, int height);
/* width/height are required for raw-planar and ignored for graymaps. */
AE_API ae_status ae_frame_load(const char* path, ae_frame_format fmt, int width, int height,
                               ae_frame** out);
AE_API ae_status ae_frame_save(const ae_frame* f, const char* path, ae_frame_format fmt);
AE_API int ae_frame_equal(const ae_frame* a, const ae_frame* b);

/* ---- masks and kernels ---- */

/* "con0", "con8", or "dy:dx,dy:dx,..." */
AE_API ae_status ae_mask_parse(const char* text, ae_mask** out);
AE_API ae_status ae_mask_create(const int* dy, const int* dx, size_t count, ae_mask** out);
AE_API void ae_mask_destroy(ae_mask* m);
AE_API size_t ae_mask_size(const ae_mask* m);
AE_API int ae_mask_vertical_span(const ae_mask* m);
AE_API int ae_mask_horizontal_span(const ae_mask* m);

typedef struct ae_kernel_desc {
  ae_kernel_op op;
  uint32_t in_channels;   /* AE_CH_* bits */
  uint32_t out_channels;
  const double* coeffs;   /* FIR weights in mask order */
  size_t coeff_count;
  uint32_t threshold;     /* homogeneity */
} ae_kernel_desc;

/* Fills in the defaults for `op`: Y in and out, no coefficients. */
AE_API ae_kernel_desc ae_kernel_desc_default(ae_kernel_op op);
AE_API ae_status ae_kernel_create(const ae_kernel_desc* desc, ae_kernel** out);
AE_API void ae_kernel_destroy(ae_kernel* k);
AE_API const char* ae_kernel_op_name(ae_kernel_op op);
AE_API ae_status ae_kernel_op_parse(const char* name, ae_kernel_op* out);

/* ---- reference scans ---- */

AE_API ae_status ae_intra_scan(const ae_frame* src, const ae_mask* mask, ae_scan scan,
                               const ae_kernel* k, ae_result** out);
AE_API ae_status ae_inter_scan(const ae_frame* a, const ae_frame* b, const ae_kernel* k,
                               ae_scan scan, ae_result** out);

typedef struct ae_seed {
  int x, y;
} ae_seed;

typedef struct ae_segment_criteria {
  uint32_t channels; /* AE_CH_* bits compared against threshold */
  uint32_t threshold;
  const ae_seed* seeds;
  size_t seed_count;
} ae_segment_criteria;

AE_API ae_status ae_segment_scan(const ae_frame* src, const ae_segment_criteria* crit,
                                 const ae_mask* mask, const ae_kernel* k, ae_result** out);

/* ---- engine ---- */

typedef struct ae_timing_config {
  double clock_hz;
  uint32_t bytes_per_word;
  double result_switch_fraction;
  ae_inter_transfer inter_transfer;
} ae_timing_config;

AE_API ae_timing_config ae_timing_config_default(void);

typedef struct ae_engine_config {
  ae_mode mode;
  ae_scan scan;
  const ae_mask* mask;     /* NULL means CON_0 */
  const ae_kernel* kernel; /* NULL means identity on Y */
  ae_timing_config timing;
  int record_trace;
} ae_engine_config;

AE_API ae_engine_config ae_engine_config_default(void);

/* `b` is the second input for inter addressing and must be NULL otherwise. */
AE_API ae_status ae_engine_run(const ae_engine_config* cfg, const ae_frame* a,
                               const ae_frame* b, ae_result** out);

typedef struct ae_counters {
  uint64_t zbt_read_events;
  uint64_t zbt_write_events;
  uint64_t zbt_word_reads;
  uint64_t zbt_word_writes;
  uint64_t host_words_in;
  uint64_t host_words_out;
  uint64_t cycles_total;
  uint64_t cycles_stalled;
  uint64_t compute_active_cycles;
  uint64_t overlap_cycles;
  uint64_t bus_busy_cycles;
  uint64_t loads;
  uint64_t shifts;
  uint64_t fetch_stall_cycles;
  uint64_t oim_full_cycles;
  uint64_t arbiter_conflicts;
} ae_counters;

typedef struct ae_timing_report {
  uint64_t total_cycles;
  uint64_t transfer_cycles;
  uint64_t output_transfer_cycles;
  uint64_t compute_only_cycles;
  uint64_t output_start_cycle;
  double overlap_fraction;
  double non_overlap_ratio;
  double seconds;
} ae_timing_report;

typedef struct ae_table_record {
  uint16_t id;
  uint64_t count;
  uint64_t sum_y, sum_u, sum_v;
} ae_table_record;

/* ---- results ---- */

AE_API void ae_result_destroy(ae_result* r);
/* Borrowed; valid until the result is destroyed. */
AE_API const ae_frame* ae_result_frame(const ae_result* r);
AE_API ae_status ae_result_sad(const ae_result* r, uint32_t* value, int* saturated);
AE_API size_t ae_result_table_size(const ae_result* r);
AE_API ae_status ae_result_table_record(const ae_result* r, size_t i, ae_table_record* out);
/* Segment scans only. */
AE_API size_t ae_result_visit_count(const ae_result* r);
AE_API ae_status ae_result_visit(const ae_result* r, size_t i, ae_seed* out);
/* Engine runs only; other results report AE_ERR_UNSUPPORTED_MODE. */
AE_API ae_status ae_result_counters(const ae_result* r, ae_counters* out);
AE_API ae_status ae_result_timing(const ae_result* r, ae_timing_report* out);
AE_API ae_status ae_result_write_trace(const ae_result* r, const char* path);

/* ---- layout and access counts ---- */

typedef struct ae_strip {
  int index;
  int first_line;
  int lines;
  int block; /* 0 = A, 1 = B */
} ae_strip;

/* Writes at most `cap` strips; *count receives the total. */
AE_API ae_status ae_plan_strips(int width, int height, ae_scan scan, ae_strip* out,
                                size_t cap, size_t* count);
AE_API ae_status ae_count_software_accesses(ae_mode mode, const ae_mask* mask,
                                            uint32_t in_channels, uint32_t out_channels,
                                            int width, int height, uint64_t* out);
AE_API ae_status ae_count_hardware_accesses(ae_mode mode, const ae_mask* mask,
                                            uint32_t channels, int width, int height,
                                            uint64_t* out);
/* Percent savings; fails with AE_ERR_ZERO_HARDWARE when hw == 0. */
AE_API ae_status ae_saving(uint64_t sw, uint64_t hw, double* rel_software,
                           double* rel_hardware);

/* ---- misc ---- */

AE_API const char* ae_status_name(ae_status s);
AE_API const char* ae_last_error(void);
AE_API const char* ae_version(void);

#ifdef __cplusplus
}
#endif

#endif /* ADDRENGINE_H_ */

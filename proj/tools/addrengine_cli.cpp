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

// addrengine: run scans and engine simulations, reproduce the access-count
// table and the transfer/compute timing figures.
//
// Uses the C API only.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "addrengine/addrengine.h"

using json = nlohmann::ordered_json;

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(ae_status s, const std::string& what) {
  if (s != AE_OK) {
    throw CliError(what + ": " + ae_status_name(s) + ": " + ae_last_error());
  }
}

template <typename T, void (*D)(T*)>
struct Deleter {
  void operator()(T* p) const { D(p); }
};
using FramePtr = std::unique_ptr<ae_frame, Deleter<ae_frame, ae_frame_destroy>>;
using MaskPtr = std::unique_ptr<ae_mask, Deleter<ae_mask, ae_mask_destroy>>;
using KernelPtr = std::unique_ptr<ae_kernel, Deleter<ae_kernel, ae_kernel_destroy>>;
using ResultPtr = std::unique_ptr<ae_result, Deleter<ae_result, ae_result_destroy>>;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

uint32_t parse_channel_list(const std::string& text) {
  uint32_t bits = 0;
  for (const std::string& raw : split(text, ',')) {
    const std::string c = lower(raw);
    if (c == "y") bits |= AE_CH_Y;
    else if (c == "u") bits |= AE_CH_U;
    else if (c == "v") bits |= AE_CH_V;
    else if (c == "alfa" || c == "alpha" || c == "a") bits |= AE_CH_ALFA;
    else if (c == "aux") bits |= AE_CH_AUX;
    else if (c == "yuv") bits |= AE_CH_YUV;
    else if (c == "none") continue;
    else throw CliError("unknown channel: " + raw);
  }
  return bits;
}

std::string channel_list(uint32_t bits) {
  static const std::pair<uint32_t, const char*> names[] = {
      {AE_CH_Y, "Y"}, {AE_CH_U, "U"}, {AE_CH_V, "V"}, {AE_CH_ALFA, "Alfa"}, {AE_CH_AUX, "Aux"}};
  std::string out;
  for (const auto& [bit, name] : names) {
    if ((bits & bit) == 0) continue;
    if (!out.empty()) out += ",";
    out += name;
  }
  return out.empty() ? "none" : out;
}

ae_mode parse_mode(const std::string& s) {
  const std::string m = lower(s);
  if (m == "inter") return AE_MODE_INTER;
  if (m == "intra") return AE_MODE_INTRA;
  if (m == "segment") return AE_MODE_SEGMENT;
  throw CliError("unknown mode: " + s);
}

ae_scan parse_scan(const std::string& s) {
  const std::string m = lower(s);
  if (m == "horizontal" || m == "h") return AE_SCAN_HORIZONTAL;
  if (m == "vertical" || m == "v") return AE_SCAN_VERTICAL;
  throw CliError("unknown scan order: " + s);
}

ae_inter_transfer parse_transfer(const std::string& s) {
  const std::string m = lower(s);
  if (m == "interleaved") return AE_INTER_INTERLEAVED;
  if (m == "sequential") return AE_INTER_SEQUENTIAL;
  throw CliError("unknown inter transfer order: " + s);
}

bool parse_bool(const std::string& s) {
  const std::string m = lower(s);
  if (m == "on" || m == "true" || m == "1" || m == "yes") return true;
  if (m == "off" || m == "false" || m == "0" || m == "no") return false;
  throw CliError("expected on/off: " + s);
}

std::pair<int, int> parse_dims(const std::string& s) {
  const std::string m = lower(s);
  if (m == "qcif") return {176, 144};
  if (m == "cif") return {352, 288};
  const auto x = m.find('x');
  if (x == std::string::npos) throw CliError("dims must be QCIF, CIF or WxH: " + s);
  try {
    return {std::stoi(m.substr(0, x)), std::stoi(m.substr(x + 1))};
  } catch (const std::exception&) {
    throw CliError("dims must be QCIF, CIF or WxH: " + s);
  }
}

// Effective configuration of a run or timing command. Loaded from the
// --config file first; explicit flags override individual fields.
struct RunConfig {
  std::string mode = "intra";
  std::string mask = "con0";
  std::string kernel = "identity";
  std::string in_channels = "Y";
  std::optional<std::string> out_channels;  // default depends on the kernel
  std::vector<double> coeffs;
  uint32_t threshold = 0;
  std::string scan = "horizontal";
  bool engine = true;
  std::string in;
  std::string in2;
  std::string out;
  std::string format;  // empty: from the file extension
  int width = 0;
  int height = 0;
  std::string dims = "CIF";  // synthetic inputs when no --in is given
  uint32_t seed = 1;
  std::string seg_channels = "Y";
  uint32_t seg_threshold = 0;
  std::vector<std::pair<int, int>> seeds;
  double clock_hz = 0;
  uint32_t bytes_per_word = 0;
  double switch_fraction = -1;
  std::string inter_transfer = "interleaved";
  std::string trace;
  std::string report;
};

std::string effective_out_channels(const RunConfig& c) {
  if (c.out_channels) return *c.out_channels;
  return lower(c.kernel) == "histogram" ? "none" : "Y";
}

void from_json(const json& j, RunConfig& c) {
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key) && !j[key].is_null()) j[key].get_to(field);
  };
  get("mode", c.mode);
  get("mask", c.mask);
  get("scan", c.scan);
  get("in", c.in);
  get("in2", c.in2);
  get("out", c.out);
  get("format", c.format);
  get("width", c.width);
  get("height", c.height);
  get("dims", c.dims);
  get("seed", c.seed);
  get("trace", c.trace);
  get("report", c.report);
  if (j.contains("engine")) {
    const json& e = j["engine"];
    c.engine = e.is_boolean() ? e.get<bool>() : parse_bool(e.get<std::string>());
  }
  if (j.contains("kernel")) {
    const json& k = j["kernel"];
    if (k.is_string()) {
      c.kernel = k.get<std::string>();
    } else {
      if (k.contains("op")) k["op"].get_to(c.kernel);
      if (k.contains("in")) k["in"].get_to(c.in_channels);
      if (k.contains("out")) c.out_channels = k["out"].get<std::string>();
      if (k.contains("coeffs")) k["coeffs"].get_to(c.coeffs);
      if (k.contains("threshold")) k["threshold"].get_to(c.threshold);
    }
  }
  if (j.contains("segment")) {
    const json& s = j["segment"];
    if (s.contains("channels")) s["channels"].get_to(c.seg_channels);
    if (s.contains("threshold")) s["threshold"].get_to(c.seg_threshold);
    if (s.contains("seeds")) {
      c.seeds.clear();
      for (const json& p : s["seeds"]) c.seeds.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    }
  }
  if (j.contains("timing")) {
    const json& t = j["timing"];
    if (t.contains("clock_hz")) t["clock_hz"].get_to(c.clock_hz);
    if (t.contains("bytes_per_word")) t["bytes_per_word"].get_to(c.bytes_per_word);
    if (t.contains("result_switch_fraction")) t["result_switch_fraction"].get_to(c.switch_fraction);
    if (t.contains("inter_transfer")) t["inter_transfer"].get_to(c.inter_transfer);
  }
}

ae_timing_config timing_of(const RunConfig& c) {
  ae_timing_config t = ae_timing_config_default();
  if (c.clock_hz > 0) t.clock_hz = c.clock_hz;
  if (c.bytes_per_word > 0) t.bytes_per_word = c.bytes_per_word;
  if (c.switch_fraction >= 0) t.result_switch_fraction = c.switch_fraction;
  t.inter_transfer = parse_transfer(c.inter_transfer);
  return t;
}

json to_json(const RunConfig& c) {
  const ae_timing_config t = timing_of(c);
  json seeds = json::array();
  for (const auto& [x, y] : c.seeds) seeds.push_back({x, y});
  json j;
  j["mode"] = lower(c.mode);
  j["mask"] = c.mask;
  j["kernel"] = {{"op", lower(c.kernel)},
                 {"in", channel_list(parse_channel_list(c.in_channels))},
                 {"out", channel_list(parse_channel_list(effective_out_channels(c)))},
                 {"coeffs", c.coeffs},
                 {"threshold", c.threshold}};
  j["scan"] = lower(c.scan);
  j["engine"] = c.engine;
  j["in"] = c.in;
  j["in2"] = c.in2;
  j["out"] = c.out;
  j["format"] = c.format;
  j["width"] = c.width;
  j["height"] = c.height;
  j["dims"] = c.dims;
  j["seed"] = c.seed;
  j["segment"] = {{"channels", channel_list(parse_channel_list(c.seg_channels))},
                  {"threshold", c.seg_threshold},
                  {"seeds", seeds}};
  j["timing"] = {{"clock_hz", t.clock_hz},
                 {"bytes_per_word", t.bytes_per_word},
                 {"result_switch_fraction", t.result_switch_fraction},
                 {"inter_transfer", t.inter_transfer == AE_INTER_SEQUENTIAL ? "sequential"
                                                                            : "interleaved"}};
  j["trace"] = c.trace;
  return j;
}

ae_frame_format format_for(const RunConfig& c, const std::string& path) {
  std::string f = lower(c.format);
  if (f.empty()) {
    const auto dot = path.rfind('.');
    f = dot == std::string::npos ? "raw" : lower(path.substr(dot + 1));
  }
  if (f == "pgm" || f == "graymap") return AE_FORMAT_GRAYMAP;
  return AE_FORMAT_RAW_PLANAR;
}

FramePtr load_input(const RunConfig& c, const std::string& path) {
  const ae_frame_format fmt = format_for(c, path);
  int w = c.width, h = c.height;
  if (fmt == AE_FORMAT_RAW_PLANAR && (w <= 0 || h <= 0)) {
    std::tie(w, h) = parse_dims(c.dims);
  }
  ae_frame* f = nullptr;
  check(ae_frame_load(path.c_str(), fmt, w, h, &f), "loading " + path);
  return FramePtr(f);
}

FramePtr synthetic(int w, int h, uint32_t seed) {
  ae_frame* f = nullptr;
  check(ae_frame_create(w, h, &f), "creating frame");
  FramePtr frame(f);
  std::mt19937 rng(seed);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      ae_pixel p;
      p.y = static_cast<uint8_t>(rng());
      p.u = static_cast<uint8_t>(rng());
      p.v = static_cast<uint8_t>(rng());
      p.alfa = static_cast<uint16_t>(rng() % 16);
      p.aux = static_cast<uint16_t>(rng());
      check(ae_frame_set(frame.get(), x, y, p), "filling frame");
    }
  }
  return frame;
}

MaskPtr make_mask(const std::string& text) {
  ae_mask* m = nullptr;
  check(ae_mask_parse(text.c_str(), &m), "mask " + text);
  return MaskPtr(m);
}

KernelPtr make_kernel(const RunConfig& c) {
  ae_kernel_op op;
  check(ae_kernel_op_parse(lower(c.kernel).c_str(), &op), "kernel");
  ae_kernel_desc d = ae_kernel_desc_default(op);
  d.in_channels = parse_channel_list(c.in_channels);
  d.out_channels = parse_channel_list(effective_out_channels(c));
  d.coeffs = c.coeffs.data();
  d.coeff_count = c.coeffs.size();
  d.threshold = c.threshold;
  ae_kernel* k = nullptr;
  check(ae_kernel_create(&d, &k), "kernel");
  return KernelPtr(k);
}

json counters_json(const ae_counters& c) {
  return {{"zbt_read_events", c.zbt_read_events},
          {"zbt_write_events", c.zbt_write_events},
          {"hardware_access_events", c.zbt_read_events + c.zbt_write_events},
          {"zbt_word_reads", c.zbt_word_reads},
          {"zbt_word_writes", c.zbt_word_writes},
          {"host_words_in", c.host_words_in},
          {"host_words_out", c.host_words_out},
          {"cycles_total", c.cycles_total},
          {"cycles_stalled", c.cycles_stalled},
          {"compute_active_cycles", c.compute_active_cycles},
          {"overlap_cycles", c.overlap_cycles},
          {"bus_busy_cycles", c.bus_busy_cycles},
          {"loads", c.loads},
          {"shifts", c.shifts},
          {"fetch_stall_cycles", c.fetch_stall_cycles},
          {"oim_full_cycles", c.oim_full_cycles},
          {"arbiter_conflicts", c.arbiter_conflicts}};
}

json timing_json(const ae_timing_report& t) {
  return {{"total_cycles", t.total_cycles},
          {"transfer_cycles", t.transfer_cycles},
          {"output_transfer_cycles", t.output_transfer_cycles},
          {"compute_only_cycles", t.compute_only_cycles},
          {"output_start_cycle", t.output_start_cycle},
          {"overlap_fraction", t.overlap_fraction},
          {"non_overlap_ratio", t.non_overlap_ratio},
          {"seconds", t.seconds}};
}

json result_json(const ae_result* r) {
  json j;
  uint32_t sad = 0;
  int sat = 0;
  check(ae_result_sad(r, &sad, &sat), "sad");
  j["sad"] = {{"value", sad}, {"saturated", sat != 0}};
  json table = json::array();
  for (size_t i = 0; i < ae_result_table_size(r); ++i) {
    ae_table_record rec;
    check(ae_result_table_record(r, i, &rec), "table");
    table.push_back({{"id", rec.id}, {"count", rec.count}, {"sum_y", rec.sum_y},
                     {"sum_u", rec.sum_u}, {"sum_v", rec.sum_v}});
  }
  j["table"] = table;
  if (const size_t n = ae_result_visit_count(r); n > 0) j["visited"] = n;
  return j;
}

// Flat key/value dump of the scalar leaves, for the terminal.
void print_table(const json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      print_table(*it, key);
    } else if (it->is_array()) {
      if (it->size() <= 8 && std::none_of(it->begin(), it->end(),
                                          [](const json& e) { return e.is_structured(); })) {
        std::printf("  %-40s %s\n", key.c_str(), it->dump().c_str());
      } else {
        std::printf("  %-40s [%zu entries]\n", key.c_str(), it->size());
      }
    } else {
      std::printf("  %-40s %s\n", key.c_str(),
                  it->is_string() ? it->get<std::string>().c_str() : it->dump().c_str());
    }
  }
}

void emit(const json& report, const std::string& path, bool json_stdout) {
  if (!path.empty()) {
    std::ofstream out(path);
    if (!out) throw CliError("cannot write report " + path);
    out << report.dump(2) << "\n";
  }
  if (json_stdout) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::printf("%s\n", report.value("command", "").c_str());
    print_table(report);
  }
}

struct Inputs {
  FramePtr a;
  FramePtr b;
};

Inputs inputs_for(const RunConfig& c, ae_mode mode) {
  Inputs in;
  if (!c.in.empty()) {
    in.a = load_input(c, c.in);
  } else {
    const auto [w, h] = parse_dims(c.dims);
    in.a = synthetic(w, h, c.seed);
  }
  if (mode == AE_MODE_INTER) {
    if (!c.in2.empty()) {
      in.b = load_input(c, c.in2);
    } else if (c.in.empty()) {
      in.b = synthetic(ae_frame_width(in.a.get()), ae_frame_height(in.a.get()), c.seed + 1);
    } else {
      throw CliError("inter mode needs --in2");
    }
  }
  return in;
}

json run_once(const RunConfig& c, std::string* trace_error) {
  const ae_mode mode = parse_mode(c.mode);
  const ae_scan scan = parse_scan(c.scan);
  MaskPtr mask = make_mask(c.mask);
  KernelPtr kernel = make_kernel(c);
  Inputs in = inputs_for(c, mode);

  ae_result* raw = nullptr;
  if (c.engine) {
    ae_engine_config ec = ae_engine_config_default();
    ec.mode = mode;
    ec.scan = scan;
    ec.mask = mask.get();
    ec.kernel = kernel.get();
    ec.timing = timing_of(c);
    ec.record_trace = c.trace.empty() ? 0 : 1;
    check(ae_engine_run(&ec, in.a.get(), in.b.get(), &raw), "engine run");
  } else if (mode == AE_MODE_INTER) {
    check(ae_inter_scan(in.a.get(), in.b.get(), kernel.get(), scan, &raw), "inter scan");
  } else if (mode == AE_MODE_INTRA) {
    check(ae_intra_scan(in.a.get(), mask.get(), scan, kernel.get(), &raw), "intra scan");
  } else {
    std::vector<ae_seed> seeds;
    for (const auto& [x, y] : c.seeds) seeds.push_back({x, y});
    ae_segment_criteria crit{parse_channel_list(c.seg_channels), c.seg_threshold, seeds.data(),
                             seeds.size()};
    check(ae_segment_scan(in.a.get(), &crit, mask.get(), kernel.get(), &raw), "segment scan");
  }
  ResultPtr result(raw);

  json report;
  report["config"] = to_json(c);
  report["frame"] = {{"width", ae_frame_width(in.a.get())},
                     {"height", ae_frame_height(in.a.get())},
                     {"bytes", ae_frame_byte_size(ae_frame_width(in.a.get()),
                                                  ae_frame_height(in.a.get()))}};
  report["result"] = result_json(result.get());
  if (c.engine) {
    ae_counters counters;
    ae_timing_report timing;
    check(ae_result_counters(result.get(), &counters), "counters");
    check(ae_result_timing(result.get(), &timing), "timing");
    report["counters"] = counters_json(counters);
    report["timing"] = timing_json(timing);
    if (!c.trace.empty()) {
      const ae_status s = ae_result_write_trace(result.get(), c.trace.c_str());
      if (s != AE_OK && trace_error) *trace_error = ae_last_error();
      check(s, "trace");
    }
  }
  if (!c.out.empty()) {
    check(ae_frame_save(ae_result_frame(result.get()), c.out.c_str(), format_for(c, c.out)),
          "saving " + c.out);
  }
  return report;
}

// Flags bound to optionals so only the ones given override the config file.
struct RunFlags {
  std::optional<std::string> config, mode, mask, kernel, in_channels, out_channels, scan,
      engine, in, in2, out, format, dims, seg_channels, seeds, inter_transfer, trace, report,
      coeffs;
  std::optional<int> width, height;
  std::optional<uint32_t> threshold, seg_threshold, seed, bytes_per_word;
  std::optional<double> clock_hz, switch_fraction;
  bool worst_case = false;
  bool json = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override its fields");
  cmd->add_option("--mode", f.mode, "inter | intra | segment");
  cmd->add_option("--mask", f.mask, "con0 | con8 | dy:dx,dy:dx,...");
  cmd->add_option("--kernel", f.kernel,
                  "identity | diff | sad | morph_gradient | fir | histogram | homogeneity");
  cmd->add_option("--in-channels", f.in_channels, "kernel input channels, e.g. Y,U,V");
  cmd->add_option("--out-channels", f.out_channels, "kernel output channels");
  cmd->add_option("--coeffs", f.coeffs, "FIR weights in mask order, comma separated");
  cmd->add_option("--threshold", f.threshold, "homogeneity threshold");
  cmd->add_option("--scan", f.scan, "horizontal | vertical");
  cmd->add_option("--engine", f.engine, "on: cycle simulator, off: reference library");
  cmd->add_option("--in", f.in, "input frame");
  cmd->add_option("--in2", f.in2, "second input frame (inter)");
  cmd->add_option("--out", f.out, "output frame");
  cmd->add_option("--format", f.format, "raw | pgm (default: from extension)");
  cmd->add_option("--width", f.width, "raw-planar frame width");
  cmd->add_option("--height", f.height, "raw-planar frame height");
  cmd->add_option("--dims", f.dims, "QCIF | CIF | WxH, for synthetic inputs");
  cmd->add_option("--seed", f.seed, "seed for synthetic inputs");
  cmd->add_option("--seg-channels", f.seg_channels, "segment criteria channels");
  cmd->add_option("--seg-threshold", f.seg_threshold, "segment criteria threshold");
  cmd->add_option("--seeds", f.seeds, "segment seeds x:y,x:y,...");
  cmd->add_option("--clock-hz", f.clock_hz, "engine and bus clock");
  cmd->add_option("--bytes-per-word", f.bytes_per_word, "bus and bank width");
  cmd->add_option("--switch-fraction", f.switch_fraction,
                  "result share held in block A before the bank switch");
  cmd->add_option("--inter-transfer", f.inter_transfer, "interleaved | sequential");
  cmd->add_flag("--worst-case", f.worst_case,
                "inter SAD with both frames transferred before processing");
  cmd->add_option("--trace", f.trace, "write the ZBT access trace (JSONL)");
  cmd->add_option("--report", f.report, "write the JSON report");
  cmd->add_flag("--json", f.json, "print the JSON report instead of the table");
}

RunConfig resolve(const RunFlags& f, RunConfig c) {
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw CliError("cannot read config " + *f.config);
    try {
      from_json(json::parse(in), c);
    } catch (const json::exception& e) {
      throw CliError("bad config " + *f.config + ": " + e.what());
    }
  }
  if (f.worst_case) {
    c.mode = "inter";
    c.kernel = "sad";
    c.inter_transfer = "sequential";
  }
  if (f.mode) c.mode = *f.mode;
  if (f.mask) c.mask = *f.mask;
  if (f.kernel) c.kernel = *f.kernel;
  if (f.in_channels) c.in_channels = *f.in_channels;
  if (f.out_channels) c.out_channels = *f.out_channels;
  if (f.coeffs) {
    c.coeffs.clear();
    for (const std::string& s : split(*f.coeffs, ',')) {
      try {
        c.coeffs.push_back(std::stod(s));
      } catch (const std::exception&) {
        throw CliError("bad coefficient: " + s);
      }
    }
  }
  if (f.threshold) c.threshold = *f.threshold;
  if (f.scan) c.scan = *f.scan;
  if (f.engine) c.engine = parse_bool(*f.engine);
  if (f.in) c.in = *f.in;
  if (f.in2) c.in2 = *f.in2;
  if (f.out) c.out = *f.out;
  if (f.format) c.format = *f.format;
  if (f.width) c.width = *f.width;
  if (f.height) c.height = *f.height;
  if (f.dims) c.dims = *f.dims;
  if (f.seed) c.seed = *f.seed;
  if (f.seg_channels) c.seg_channels = *f.seg_channels;
  if (f.seg_threshold) c.seg_threshold = *f.seg_threshold;
  if (f.seeds) {
    c.seeds.clear();
    for (const std::string& s : split(*f.seeds, ',')) {
      const auto colon = s.find(':');
      if (colon == std::string::npos) throw CliError("seeds are x:y pairs: " + s);
      c.seeds.emplace_back(std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1)));
    }
  }
  if (f.clock_hz) c.clock_hz = *f.clock_hz;
  if (f.bytes_per_word) c.bytes_per_word = *f.bytes_per_word;
  if (f.switch_fraction) c.switch_fraction = *f.switch_fraction;
  if (f.inter_transfer) c.inter_transfer = *f.inter_transfer;
  if (f.trace) c.trace = *f.trace;
  if (f.report) c.report = *f.report;

  // Catch bad enumerations before any work is done.
  parse_mode(c.mode);
  parse_scan(c.scan);
  parse_transfer(c.inter_transfer);
  parse_channel_list(c.in_channels);
  parse_channel_list(effective_out_channels(c));
  parse_channel_list(c.seg_channels);
  return c;
}

int cmd_run(const RunFlags& f) {
  const RunConfig c = resolve(f, RunConfig{});
  json report;
  report["command"] = "run";
  const json body = run_once(c, nullptr);
  for (auto& [k, v] : body.items()) report[k] = v;
  emit(report, c.report, f.json);
  return 0;
}

int cmd_timing(const RunFlags& f) {
  RunConfig defaults;
  defaults.out.clear();
  const RunConfig c = resolve(f, defaults);
  if (!c.engine) throw CliError("timing needs the engine");
  json full = run_once(c, nullptr);
  json report;
  report["command"] = "timing";
  report["config"] = full["config"];
  report["frame"] = full["frame"];
  report["timing"] = full["timing"];
  const ae_timing_config t = timing_of(c);
  const double bw = t.clock_hz * t.bytes_per_word;
  report["bandwidth_bytes_per_second"] = bw;
  report["counters"] = full["counters"];
  emit(report, c.report, f.json);
  return 0;
}

struct Table2Row {
  const char* label;
  ae_mode mode;
  const char* mask;
  uint32_t in;
  uint32_t out;
  uint64_t cif_sw;  // expected software accesses on CIF
};

constexpr Table2Row kTable2[] = {
    {"inter Y", AE_MODE_INTER, "con0", AE_CH_Y, AE_CH_Y, 304'128},
    {"intra CON_0 Y", AE_MODE_INTRA, "con0", AE_CH_Y, AE_CH_Y, 202'752},
    {"intra CON_8 Y", AE_MODE_INTRA, "con8", AE_CH_Y, AE_CH_Y, 405'504},
    {"intra CON_8 YUV", AE_MODE_INTRA, "con8", AE_CH_YUV, AE_CH_YUV, 608'256},
};
constexpr uint64_t kCifPixels = 352 * 288;
constexpr uint64_t kCifHardware = 202'752;

int cmd_table2(const std::string& dims_text, bool simulate, const std::string& report_path,
               bool json_stdout) {
  const auto [w, h] = parse_dims(dims_text);
  const uint64_t pixels = static_cast<uint64_t>(w) * static_cast<uint64_t>(h);
  bool ok = true;
  json rows = json::array();
  for (const Table2Row& r : kTable2) {
    MaskPtr mask = make_mask(r.mask);
    uint64_t sw = 0, hw = 0;
    check(ae_count_software_accesses(r.mode, mask.get(), r.in, r.out, w, h, &sw), r.label);
    check(ae_count_hardware_accesses(r.mode, mask.get(), r.in, w, h, &hw), r.label);
    // Both columns scale linearly with the pixel count.
    const bool scalable = (r.cif_sw * pixels) % kCifPixels == 0;
    const uint64_t exp_sw = r.cif_sw * pixels / kCifPixels;
    const uint64_t exp_hw = kCifHardware * pixels / kCifPixels;
    const bool match = scalable && sw == exp_sw && hw == exp_hw;
    ok = ok && match;

    json row;
    row["row"] = r.label;
    row["software"] = sw;
    row["hardware"] = hw;
    row["expected_software"] = exp_sw;
    row["expected_hardware"] = exp_hw;
    double rel_sw = 0, rel_hw = 0;
    const ae_status s = ae_saving(sw, hw, &rel_sw, &rel_hw);
    if (s == AE_OK) {
      row["saving_vs_software_pct"] = rel_sw;
      row["saving_vs_hardware_pct"] = rel_hw;
    } else {
      row["saving_error"] = ae_status_name(s);
    }
    if (simulate) {
      ae_kernel_desc d = ae_kernel_desc_default(r.mode == AE_MODE_INTER ? AE_OP_DIFF
                                                                         : AE_OP_MORPH_GRADIENT);
      d.in_channels = r.in;
      d.out_channels = r.out;
      ae_kernel* kraw = nullptr;
      check(ae_kernel_create(&d, &kraw), r.label);
      KernelPtr kernel(kraw);
      FramePtr a = synthetic(w, h, 11);
      FramePtr b = r.mode == AE_MODE_INTER ? synthetic(w, h, 12) : nullptr;
      ae_engine_config ec = ae_engine_config_default();
      ec.mode = r.mode;
      ec.mask = mask.get();
      ec.kernel = kernel.get();
      ae_result* raw = nullptr;
      check(ae_engine_run(&ec, a.get(), b.get(), &raw), r.label);
      ResultPtr res(raw);
      ae_counters c;
      check(ae_result_counters(res.get(), &c), r.label);
      const uint64_t simulated = c.zbt_read_events + c.zbt_write_events;
      row["simulated_hardware"] = simulated;
      const bool sim_ok = simulated == hw;
      row["simulated_match"] = sim_ok;
      ok = ok && sim_ok;
    }
    row["match"] = match;
    rows.push_back(row);
  }

  json report;
  report["command"] = "table2";
  report["config"] = {{"dims", dims_text}, {"width", w}, {"height", h}, {"simulate", simulate}};
  report["rows"] = rows;
  report["self_check"] = ok ? "pass" : "fail";

  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw CliError("cannot write report " + report_path);
    out << report.dump(2) << "\n";
  }
  if (json_stdout) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::printf("table2 %dx%d\n", w, h);
    std::printf("  %-18s %12s %12s %10s %10s%s\n", "row", "software", "hardware", "vs sw %",
                "vs hw %", simulate ? "    simulated" : "");
    for (const json& r : rows) {
      std::printf("  %-18s %12llu %12llu %10.2f %10.2f", r["row"].get<std::string>().c_str(),
                  static_cast<unsigned long long>(r["software"].get<uint64_t>()),
                  static_cast<unsigned long long>(r["hardware"].get<uint64_t>()),
                  r.value("saving_vs_software_pct", 0.0), r.value("saving_vs_hardware_pct", 0.0));
      if (simulate) {
        std::printf(" %12llu", static_cast<unsigned long long>(
                                   r["simulated_hardware"].get<uint64_t>()));
      }
      std::printf("%s\n", r["match"].get<bool>() ? "" : "  MISMATCH");
    }
    std::printf("  self-check: %s\n", ok ? "pass" : "fail");
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"address engine simulator and access-count benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ae_version()));

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run a scan in the library or the engine simulator");
  add_run_flags(run, run_flags);

  RunFlags timing_flags;
  CLI::App* timing = app.add_subcommand("timing", "transfer/compute timing of one engine run");
  add_run_flags(timing, timing_flags);

  std::string t2_dims = "CIF";
  std::string t2_report;
  bool t2_simulate = false;
  bool t2_json = false;
  CLI::App* table2 = app.add_subcommand("table2", "software vs engine memory accesses");
  table2->add_option("--dims", t2_dims, "QCIF | CIF | WxH");
  table2->add_flag("--simulate", t2_simulate, "confirm the engine column with the simulator");
  table2->add_option("--report", t2_report, "write the JSON report");
  table2->add_flag("--json", t2_json, "print the JSON report instead of the table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_flags);
    if (*timing) return cmd_timing(timing_flags);
    if (*table2) return cmd_table2(t2_dims, t2_simulate, t2_report, t2_json);
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

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

#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

#include "addrengine/addresslib.hpp"
#include "addrengine/frame.hpp"
#include "oracles.hpp"
#include "support.hpp"

#ifndef ADDRENGINE_CLI
#error "ADDRENGINE_CLI must name the CLI binary"
#endif

using namespace ae;
using json = nlohmann::json;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome cli(const std::string& args) {
  const std::string cmd = std::string("\"") + ADDRENGINE_CLI + "\" " + args + " 2>&1";
  Outcome o;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) o.out += buf;
  const int rc = pclose(p);
  o.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return o;
}

json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

}  // namespace

TEST_CASE("cli run: intra CON_8 gradient on a QCIF graymap") {
  test::TempDir dir("cli-run");
  std::mt19937 rng(51);
  Frame in = test::random_frame(176, 144, rng);
  for (Pixel& p : in.pixels()) p = Pixel{p.y, 0, 0, 0, 0};
  save_frame(in, dir / "in.pgm", FrameFormat::graymap);

  for (const char* engine : {"on", "off"}) {
    const Outcome o = cli("run --mode intra --mask con8 --kernel morph_gradient --engine " +
                          std::string(engine) + " --in " + (dir / "in.pgm").string() +
                          " --out " + (dir / "out.pgm").string() + " --report " +
                          (dir / "r.json").string());
    REQUIRE_MESSAGE(o.status == 0, o.out);
    const Frame got = load_frame(dir / "out.pgm", FrameFormat::graymap);
    const oracle::Result want =
        oracle::intra(in, NeighborhoodMask::con8().offsets(), Kernel::morph_gradient());
    REQUIRE(got == want.frame);
    const json r = read_json(dir / "r.json");
    CHECK(r["command"] == "run");
    CHECK(r["config"]["mask"] == "con8");
    if (std::string(engine) == "on") {
      CHECK(r["counters"]["hardware_access_events"] == 2 * 176 * 144);
      CHECK(r["timing"]["transfer_cycles"] == 2 * 176 * 144);
    } else {
      CHECK_FALSE(r.contains("counters"));
    }
  }
}

TEST_CASE("cli run: raw-planar inter SAD with config file and overrides") {
  test::TempDir dir("cli-inter");
  std::mt19937 rng(52);
  const Frame a = test::random_frame(32, 32, rng);
  const Frame b = test::random_frame(32, 32, rng);
  save_frame(a, dir / "a.raw", FrameFormat::raw_planar);
  save_frame(b, dir / "b.raw", FrameFormat::raw_planar);
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << json{{"mode", "inter"},
                {"mask", "con0"},
                {"kernel", {{"op", "sad"}, {"in", "Y,U,V"}, {"out", "Y"}}},
                {"width", 32},
                {"height", 32},
                {"in", (dir / "a.raw").string()},
                {"in2", (dir / "b.raw").string()},
                {"timing", {{"inter_transfer", "sequential"}}}}
               .dump();
  }
  const Outcome o = cli("run --config " + (dir / "cfg.json").string() + " --mask con8 --out " +
                        (dir / "d.raw").string() + " --trace " + (dir / "t.jsonl").string() +
                        " --json");
  REQUIRE_MESSAGE(o.status == 0, o.out);
  const json r = json::parse(o.out);
  CHECK(r["config"]["mask"] == "con8");  // flag wins
  CHECK(r["config"]["timing"]["inter_transfer"] == "sequential");
  CHECK(r["config"]["kernel"]["in"] == "Y,U,V");

  Kernel k = Kernel::sad(ChannelSet::yuv());
  k.out_channels = {Channel::y};
  const oracle::Result want = oracle::inter(a, b, k);
  CHECK(r["result"]["sad"]["value"] == want.sad());
  CHECK(load_frame(dir / "d.raw", FrameFormat::raw_planar, 32, 32) == want.frame);

  std::ifstream trace(dir / "t.jsonl");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(trace, line)) {
    const json e = json::parse(line);
    REQUIRE(e.contains("bank"));
    ++lines;
  }
  // Per pixel: 4 host writes and 4 TxU reads (two frames), 2 result writes,
  // 2 host reads.
  CHECK(lines == 12u * 32u * 32u);
}

TEST_CASE("cli run: failures exit nonzero") {
  Outcome o = cli("run --mode segment --engine on --dims 32x32");
  CHECK(o.status != 0);
  CHECK(o.out.find("unsupported-mode") != std::string::npos);

  o = cli("run --mode intra --in /nonexistent/in.pgm");
  CHECK(o.status != 0);
  CHECK(o.out.find("io-error") != std::string::npos);

  o = cli("run --mode intra --mask 0:9");
  CHECK(o.status != 0);
  CHECK(o.out.find("mask-span") != std::string::npos);

  o = cli("run --mode intra --dims 32x20");
  CHECK(o.status != 0);
  CHECK(o.out.find("non-divisible") != std::string::npos);

  o = cli("run --mode sideways");
  CHECK(o.status != 0);

  o = cli("run --config /nonexistent/cfg.json");
  CHECK(o.status != 0);
}

TEST_CASE("cli run: segment mode in the reference library") {
  const Outcome o = cli("run --mode segment --engine off --dims 32x32 --mask con8 "
                        "--seg-threshold 255 --seeds 0:0 --kernel identity --json");
  REQUIRE_MESSAGE(o.status == 0, o.out);
  CHECK(json::parse(o.out)["result"]["visited"] == 32 * 32);
}

TEST_CASE("cli table2") {
  Outcome o = cli("table2 --dims CIF --json");
  REQUIRE_MESSAGE(o.status == 0, o.out);
  const json r = json::parse(o.out);
  CHECK(r["self_check"] == "pass");
  const std::uint64_t sw[] = {304'128, 202'752, 405'504, 608'256};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r["rows"][i]["software"] == sw[i]);
    CHECK(r["rows"][i]["hardware"] == 202'752);
  }
  CHECK(r["rows"][3]["saving_vs_hardware_pct"].get<double>() == doctest::Approx(200.0));

  o = cli("table2 --dims QCIF --json");
  REQUIRE(o.status == 0);
  CHECK(json::parse(o.out)["rows"][0]["software"] == 304'128 / 4);

  o = cli("table2 --dims 64x32 --simulate --json");
  REQUIRE(o.status == 0);
  CHECK(json::parse(o.out)["rows"][2]["simulated_hardware"] == 2 * 64 * 32);
}

TEST_CASE("cli timing") {
  Outcome o = cli("timing --worst-case --json");
  REQUIRE_MESSAGE(o.status == 0, o.out);
  json r = json::parse(o.out);
  CHECK(r["timing"]["non_overlap_ratio"].get<double>() == doctest::Approx(0.125).epsilon(0.04));
  CHECK(r["bandwidth_bytes_per_second"] == 264.0e6);

  o = cli("timing --mode intra --mask con0 --json");
  REQUIRE(o.status == 0);
  r = json::parse(o.out);
  CHECK(r["timing"]["overlap_fraction"].get<double>() > 0.95);

  o = cli("timing --dims 0x0 --json");
  REQUIRE(o.status == 0);
  r = json::parse(o.out);
  for (const auto& [k, v] : r["timing"].items()) CHECK_MESSAGE(v == 0, k);

  // Same config, same report.
  CHECK(cli("timing --worst-case --dims QCIF --json").out ==
        cli("timing --worst-case --dims QCIF --json").out);
}

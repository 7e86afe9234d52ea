// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

// Drives the command-line tool as a subprocess.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / ("posecodec_cli_" + std::string(name));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Run run(const fs::path& dir, const std::string& args) {
  const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = std::string("\"") + POSECODEC_CLI + "\" " + args + " >\"" + out.string() +
                          "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

const char* kScenario = R"({"seed": 23, "n_frames": 25, "map_size": [64, 64], "sigma_px": 2.0,
  "mode": "orientation", "noise_sigma": 0.0, "pose_prior": {"random_angles": 30}})";

}  // namespace

TEST_CASE("synth, decode with ground-truth lengths, eval") {
  const fs::path d = scratch_dir("roundtrip");
  write(d / "scenario.json", kScenario);
  const std::string s = (d / "s").string();
  REQUIRE(run(d, "synth --scenario " + (d / "scenario.json").string() + " --out " + s).code == 0);
  const auto dec = run(d, "decode --heatmaps " + s + "/heatmaps.posmap --orient " + s +
                              "/orient.posmap --lengths gt:" + s + "/gt_poses.jsonl --out " +
                              (d / "pred.jsonl").string());
  REQUIRE(dec.code == 0);
  const auto ev = run(d, "eval --pred " + (d / "pred.jsonl").string() + " --gt " + s +
                             "/gt_poses.jsonl --report " + (d / "report.json").string());
  REQUIRE(ev.code == 0);
  CHECK(ev.out.find("MPJPE") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(d / "report.json"));
  CHECK(j["mpjpe_mm"].get<double>() < 1e-6);
  CHECK(j["pck"].get<double>() == 1.0);
  CHECK(j["n_frames"].get<int>() == 25);
  CHECK(j["per_joint_mm"].contains("pelvis"));

  // Same inputs give the same report bytes.
  REQUIRE(run(d, "eval --pred " + (d / "pred.jsonl").string() + " --gt " + s + "/gt_poses.jsonl --report " +
                     (d / "report2.json").string())
              .code == 0);
  CHECK(slurp(d / "report.json") == slurp(d / "report2.json"));
}

TEST_CASE("encode reproduces the synthetic maps") {
  const fs::path d = scratch_dir("encode");
  write(d / "scenario.json", kScenario);
  const std::string s = (d / "s").string();
  REQUIRE(run(d, "synth --scenario " + (d / "scenario.json").string() + " --out " + s).code == 0);
  REQUIRE(run(d, "encode --poses " + s + "/gt_poses.jsonl --keypoints " + s + "/keypoints.jsonl --out " +
                     (d / "enc").string())
              .code == 0);
  CHECK(slurp(d / "enc" / "heatmaps.posmap") == slurp(d / "s" / "heatmaps.posmap"));
  CHECK(slurp(d / "enc" / "orient.posmap") == slurp(d / "s" / "orient.posmap"));
}

TEST_CASE("identical scenarios give identical files") {
  const fs::path d = scratch_dir("determinism");
  write(d / "scenario.json", kScenario);
  for (const char* out : {"a", "b"})
    REQUIRE(run(d, "synth --scenario " + (d / "scenario.json").string() + " --out " + (d / out).string()).code ==
            0);
  for (const char* f : {"gt_poses.jsonl", "keypoints.jsonl", "heatmaps.posmap", "orient.posmap"})
    CHECK(slurp(d / "a" / f) == slurp(d / "b" / f));
}

TEST_CASE("eval with mismatched joint counts exits 2") {
  const fs::path d = scratch_dir("mismatch");
  std::string pose16 = R"({"frame": 0, "joints_mm": [)";
  for (int j = 0; j < 16; ++j) pose16 += std::string(j ? "," : "") + "[0,0,0]";
  pose16 += "]}\n";
  write(d / "pred.jsonl", pose16);
  write(d / "gt.jsonl", pose16);
  const auto r = run(d, "eval --pred " + (d / "pred.jsonl").string() + " --gt " + (d / "gt.jsonl").string() +
                            " --report " + (d / "r.json").string());
  CHECK(r.code == 2);
  CHECK(r.err.find("JointCountMismatch") != std::string::npos);
}

TEST_CASE("I/O and format failures exit 2") {
  const fs::path d = scratch_dir("io");
  write(d / "junk.posmap", "not a container at all");
  const auto r = run(d, "decode --heatmaps " + (d / "junk.posmap").string() + " --orient " +
                            (d / "junk.posmap").string() + " --out " + (d / "p.jsonl").string());
  CHECK(r.code == 2);
  CHECK(r.err.find("BadMagic") != std::string::npos);
  CHECK(run(d, "eval --pred /nonexistent/a.jsonl --gt /nonexistent/b.jsonl --report x.json").code == 2);
}

TEST_CASE("bad flags exit 3") {
  const fs::path d = scratch_dir("flags");
  CHECK(run(d, "").code == 3);
  CHECK(run(d, "frobnicate").code == 3);
  CHECK(run(d, "eval --pred a.jsonl").code == 3);
  CHECK(run(d, "encode --poses a --keypoints b --out c --mode sideways").code == 3);
  CHECK(run(d, "encode --poses a --keypoints b --out c --map-size 64by64").code == 3);
}

TEST_CASE("bench-jitter writes a mean and spread report") {
  const fs::path d = scratch_dir("bench");
  write(d / "scenario.json",
        R"({"seed": 5, "n_frames": 10, "noise_sigma": 0.1, "jitter_px": 40.0, "pose_prior": {"random_angles": 30}})");
  const auto r = run(d, "bench-jitter --scenario " + (d / "scenario.json").string() + " --trials 20 --report " +
                            (d / "jitter.json").string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("±") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(d / "jitter.json"));
  CHECK(j["trials"].get<int>() == 20);
}

TEST_CASE("selftest exits 0") {
  const fs::path d = scratch_dir("selftest");
  const auto r = run(d, "selftest");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "posecodec/posecodec.h"

namespace {

enum ExitCode : int { kSuccess = 0, kValidation = 1, kIoFormat = 2, kBadFlags = 3 };

int exit_code_for(pc_status s) {
  switch (s) {
    case PC_OK:
      return kSuccess;
    case PC_ERR_INVALID_ARGUMENT:
      return kBadFlags;
    case PC_ERR_INVALID_SKELETON:
    case PC_ERR_SHAPE_MISMATCH:
    case PC_ERR_JOINT_COUNT_MISMATCH:
    case PC_ERR_EMPTY_INPUT:
    case PC_ERR_BAD_MAGIC:
    case PC_ERR_CRC_MISMATCH:
    case PC_ERR_TRUNCATED_FILE:
    case PC_ERR_FRAME_ORDER:
    case PC_ERR_IO:
    case PC_ERR_FORMAT:
      return kIoFormat;
    default:
      return kValidation;
  }
}

struct CliFailure {
  pc_status status;
};

void check(pc_status s) {
  if (s != PC_OK) throw CliFailure{s};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Skeleton = std::unique_ptr<pc_skeleton, Deleter<pc_skeleton, pc_skeleton_free>>;
using Poses = std::unique_ptr<pc_pose_set, Deleter<pc_pose_set, pc_poses_free>>;
using KeypointSet = std::unique_ptr<pc_keypoint_set, Deleter<pc_keypoint_set, pc_keypoints_free>>;
using Maps = std::unique_ptr<pc_map_set, Deleter<pc_map_set, pc_maps_free>>;
using Report = std::unique_ptr<pc_report, Deleter<pc_report, pc_report_free>>;

Skeleton load_skeleton(const std::string& path) {
  pc_skeleton* raw = nullptr;
  check(path.empty() ? pc_skeleton_default(&raw) : pc_skeleton_load(path.c_str(), &raw));
  return Skeleton(raw);
}

Poses read_poses(const std::string& path, const pc_skeleton* skeleton) {
  pc_pose_set* raw = nullptr;
  check(pc_poses_read(path.c_str(), skeleton, &raw));
  return Poses(raw);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::fprintf(stderr, "IoError: cannot write %s\n", path.c_str());
    throw CliFailure{PC_ERR_IO};
  }
  out << text;
}

pc_mode parse_mode(const std::string& mode) {
  return mode == "limb_vector" ? PC_MODE_LIMB_VECTOR : PC_MODE_ORIENTATION;
}

pc_dtype parse_dtype(const std::string& dtype) {
  return dtype == "f32" ? PC_DTYPE_F32 : PC_DTYPE_F64;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"posecodec: limb-orientation pose maps, decoding and evaluation"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::string skeleton_path;
  app.add_option("--skeleton", skeleton_path, "skeleton JSON (default: built-in 17-joint)")
      ->check(CLI::ExistingFile);

  const auto modes = CLI::IsMember({"orientation", "limb_vector"});
  const auto dtypes = CLI::IsMember({"f32", "f64"});

  auto* encode = app.add_subcommand("encode", "render heatmaps and orientation maps");
  std::string enc_poses, enc_kps, enc_out, enc_mode = "orientation", map_size = "64x64",
                                           enc_dtype = "f64";
  double sigma = 2.0;
  encode->add_option("--poses", enc_poses, "3D poses (jsonl)")->required();
  encode->add_option("--keypoints", enc_kps, "2D keypoints in map pixels (jsonl)")->required();
  encode->add_option("--out", enc_out, "output directory")->required();
  encode->add_option("--mode", enc_mode)->check(modes);
  encode->add_option("--sigma", sigma, "heatmap Gaussian sigma (map px)")->check(CLI::PositiveNumber);
  encode->add_option("--map-size", map_size, "HxW");
  encode->add_option("--dtype", enc_dtype, "container dtype")->check(dtypes);

  auto* decode = app.add_subcommand("decode", "decode map stacks into 3D poses");
  std::string dec_heat, dec_orient, dec_lengths = "ref", dec_out, dec_mode = "orientation";
  decode->add_option("--heatmaps", dec_heat)->required();
  decode->add_option("--orient", dec_orient)->required();
  decode->add_option("--lengths", dec_lengths, "ref | gt:<posefile>");
  decode->add_option("--out", dec_out)->required();
  decode->add_option("--mode", dec_mode)->check(modes);

  auto* eval = app.add_subcommand("eval", "MPJPE, PA-MPJPE, PCK@150 and AUC");
  std::string eval_pred, eval_gt, eval_report;
  eval->add_option("--pred", eval_pred)->required();
  eval->add_option("--gt", eval_gt)->required();
  eval->add_option("--report", eval_report, "JSON report path")->required();

  auto* synth = app.add_subcommand("synth", "generate synthetic frames and maps");
  std::string synth_scenario, synth_out, synth_dtype = "f64";
  synth->add_option("--scenario", synth_scenario)->required();
  synth->add_option("--out", synth_out)->required();
  synth->add_option("--dtype", synth_dtype)->check(dtypes);

  auto* bench = app.add_subcommand("bench-jitter", "decode-window jitter robustness");
  std::string bench_scenario, bench_report;
  int trials = 20;
  bench->add_option("--scenario", bench_scenario)->required();
  bench->add_option("--trials", trials)->check(CLI::PositiveNumber);
  bench->add_option("--report", bench_report)->required();

  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "BadFlags: %s\n", e.what());
    return kBadFlags;
  }

  try {
    if (*encode) {
      int h = 0, w = 0;
      char sep = 0;
      if (std::sscanf(map_size.c_str(), "%d%c%d", &h, &sep, &w) != 3 || sep != 'x' || h <= 0 || w <= 0) {
        std::fprintf(stderr, "BadFlags: --map-size must look like 64x64\n");
        return kBadFlags;
      }
      auto skeleton = load_skeleton(skeleton_path);
      auto poses = read_poses(enc_poses, skeleton.get());
      pc_keypoint_set* kraw = nullptr;
      check(pc_keypoints_read(enc_kps.c_str(), skeleton.get(), &kraw));
      KeypointSet kps(kraw);
      pc_encode_options opts;
      pc_encode_options_default(&opts);
      opts.mode = parse_mode(enc_mode);
      opts.sigma_px = sigma;
      opts.map_h = h;
      opts.map_w = w;
      pc_map_set *hraw = nullptr, *oraw = nullptr;
      check(pc_encode(skeleton.get(), poses.get(), kps.get(), &opts, &hraw, &oraw));
      Maps heat(hraw), orient(oraw);
      std::error_code ec;
      std::filesystem::create_directories(enc_out, ec);
      const auto dir = std::filesystem::path(enc_out);
      check(pc_maps_write(heat.get(), (dir / "heatmaps.posmap").c_str(), parse_dtype(enc_dtype)));
      check(pc_maps_write(orient.get(), (dir / "orient.posmap").c_str(), parse_dtype(enc_dtype)));
      std::printf("encoded %zu frames into %s\n", pc_maps_frames(heat.get()), enc_out.c_str());
    } else if (*decode) {
      auto skeleton = load_skeleton(skeleton_path);
      Poses length_source;
      if (dec_lengths.rfind("gt:", 0) == 0) {
        length_source = read_poses(dec_lengths.substr(3), skeleton.get());
      } else if (dec_lengths != "ref") {
        std::fprintf(stderr, "BadFlags: --lengths must be ref or gt:<posefile>\n");
        return kBadFlags;
      }
      pc_map_set *hraw = nullptr, *oraw = nullptr;
      check(pc_maps_read(dec_heat.c_str(), PC_MAPS_HEATMAP, PC_MODE_ORIENTATION, &hraw));
      Maps heat(hraw);
      check(pc_maps_read(dec_orient.c_str(), PC_MAPS_ORIENTATION, parse_mode(dec_mode), &oraw));
      Maps orient(oraw);
      pc_pose_set* praw = nullptr;
      check(pc_decode(skeleton.get(), heat.get(), orient.get(), length_source.get(), &praw));
      Poses decoded(praw);
      check(pc_poses_write(decoded.get(), dec_out.c_str()));
      std::printf("decoded %zu frames into %s\n", pc_poses_count(decoded.get()), dec_out.c_str());
    } else if (*eval) {
      auto skeleton = load_skeleton(skeleton_path);
      auto pred = read_poses(eval_pred, nullptr);
      auto gt = read_poses(eval_gt, nullptr);
      pc_report* rraw = nullptr;
      check(pc_evaluate(skeleton.get(), pred.get(), gt.get(), &rraw));
      Report report(rraw);
      write_file(eval_report, pc_report_json(report.get()));
      std::fputs(pc_report_text(report.get()), stdout);
    } else if (*synth) {
      auto skeleton = load_skeleton(skeleton_path);
      check(pc_synth_run(skeleton.get(), synth_scenario.c_str(), synth_out.c_str(),
                         parse_dtype(synth_dtype)));
      std::printf("wrote synthetic frames to %s\n", synth_out.c_str());
    } else if (*bench) {
      auto skeleton = load_skeleton(skeleton_path);
      pc_report* rraw = nullptr;
      check(pc_bench_jitter(skeleton.get(), bench_scenario.c_str(), trials, &rraw));
      Report report(rraw);
      write_file(bench_report, pc_report_json(report.get()));
      std::fputs(pc_report_text(report.get()), stdout);
    } else if (*selftest) {
      pc_report* rraw = nullptr;
      const pc_status s = pc_selftest(&rraw);
      Report report(rraw);
      if (report) std::fputs(pc_report_text(report.get()), stdout);
      check(s);
    }
  } catch (const CliFailure& f) {
    const char* msg = pc_last_error();
    if (msg && *msg)
      std::fprintf(stderr, "%s\n", msg);
    else
      std::fprintf(stderr, "%s\n", pc_status_name(f.status));
    return exit_code_for(f.status);
  }
  return kSuccess;
}

// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include "posecodec/posecodec.h"

#include <filesystem>
#include <new>
#include <optional>
#include <string>

#include "json.hpp"
#include "posecodec/core/decode.hpp"
#include "posecodec/core/encode.hpp"
#include "posecodec/core/error.hpp"
#include "posecodec/core/metrics.hpp"
#include "posecodec/core/parallel.hpp"
#include "posecodec/core/report.hpp"
#include "posecodec/core/selftest.hpp"
#include "posecodec/core/synth.hpp"
#include "posecodec/core/tensorio.hpp"

namespace pc = posecodec;

struct pc_skeleton {
  pc::SkeletonSpec spec;
};

struct pc_pose_set {
  int num_joints = 0;
  std::vector<pc::PoseFrame> frames;
};

struct pc_keypoint_set {
  std::vector<pc::KeypointFrame> frames;
};

struct pc_map_set {
  pc_map_kind kind = PC_MAPS_HEATMAP;
  std::vector<pc::HeatmapStack> heatmaps;
  std::vector<pc::OrientationMapStack> orientation;
};

struct pc_report {
  std::string json;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

pc_status set_error(pc_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
pc_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const pc::Error& e) {
    return set_error(static_cast<pc_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(PC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(PC_ERR_INTERNAL, e.what());
  }
}

pc_status null_arg(const char* name) {
  return set_error(PC_ERR_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

pc::EncodingMode to_mode(pc_mode mode) {
  if (mode == PC_MODE_ORIENTATION) return pc::EncodingMode::kOrientation;
  if (mode == PC_MODE_LIMB_VECTOR) return pc::EncodingMode::kLimbVector;
  throw pc::Error(pc::ErrorCode::kInvalidArgument, "unknown encoding mode");
}

pc::Dtype to_dtype(pc_dtype dtype) {
  if (dtype == PC_DTYPE_F32) return pc::Dtype::kF32;
  if (dtype == PC_DTYPE_F64) return pc::Dtype::kF64;
  throw pc::Error(pc::ErrorCode::kInvalidArgument, "unknown dtype");
}

pc::Pose3D pose_from_array(const double* xyz, int n) {
  pc::Pose3D p;
  for (int j = 0; j < n; ++j) p.joints_mm.emplace_back(xyz[3 * j], xyz[3 * j + 1], xyz[3 * j + 2]);
  return p;
}

}  // namespace

extern "C" {

const char* pc_version(void) { return "0.1.0"; }

const char* pc_status_name(pc_status status) {
  if (status == PC_ERR_INTERNAL) return "InternalError";
  static thread_local std::string name;
  name = std::string(pc::error_name(static_cast<pc::ErrorCode>(status)));
  return name.c_str();
}

const char* pc_last_error(void) { return g_last_error.c_str(); }

pc_status pc_skeleton_default(pc_skeleton** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new pc_skeleton{pc::default_h36m_skeleton()};
    return PC_OK;
  });
}

pc_status pc_skeleton_load(const char* path, pc_skeleton** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new pc_skeleton{pc::load_skeleton_json(path)};
    return PC_OK;
  });
}

void pc_skeleton_free(pc_skeleton* skeleton) { delete skeleton; }

int pc_skeleton_num_joints(const pc_skeleton* s) { return s ? s->spec.num_joints() : 0; }
int pc_skeleton_num_limbs(const pc_skeleton* s) { return s ? s->spec.num_limbs() : 0; }
int pc_skeleton_root(const pc_skeleton* s) { return s ? s->spec.root() : -1; }

pc_status pc_skeleton_ref_lengths(const pc_skeleton* s, double* out, size_t capacity) {
  if (!s) return null_arg("skeleton");
  if (!out) return null_arg("out");
  const auto& len = s->spec.ref_lengths_mm();
  if (capacity < len.size()) return set_error(PC_ERR_INVALID_ARGUMENT, "output buffer too small");
  std::copy(len.begin(), len.end(), out);
  return PC_OK;
}

pc_status pc_poses_create(int num_joints, pc_pose_set** out) {
  if (!out) return null_arg("out");
  if (num_joints <= 0) return set_error(PC_ERR_INVALID_ARGUMENT, "num_joints must be positive");
  return guarded([&] {
    *out = new pc_pose_set{num_joints, {}};
    return PC_OK;
  });
}

pc_status pc_poses_append(pc_pose_set* set, int64_t frame, const double* joints_mm) {
  if (!set) return null_arg("set");
  if (!joints_mm) return null_arg("joints_mm");
  if (!set->frames.empty() && frame <= set->frames.back().frame)
    return set_error(PC_ERR_FRAME_ORDER, "frame indices must strictly increase");
  return guarded([&] {
    set->frames.push_back({frame, pose_from_array(joints_mm, set->num_joints)});
    return PC_OK;
  });
}

pc_status pc_poses_read(const char* path, const pc_skeleton* skeleton, pc_pose_set** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] {
    const int expected = skeleton ? skeleton->spec.num_joints() : 0;
    auto frames = pc::read_poses(path, expected);
    int n = expected;
    if (n == 0 && !frames.empty()) n = frames.front().pose.size();
    for (const auto& f : frames)
      if (f.pose.size() != n)
        throw pc::Error(pc::ErrorCode::kJointCountMismatch, "frames disagree on joint count");
    *out = new pc_pose_set{n, std::move(frames)};
    return PC_OK;
  });
}

pc_status pc_poses_write(const pc_pose_set* set, const char* path) {
  if (!set) return null_arg("set");
  if (!path) return null_arg("path");
  return guarded([&] {
    pc::write_poses(path, set->frames);
    return PC_OK;
  });
}

size_t pc_poses_count(const pc_pose_set* set) { return set ? set->frames.size() : 0; }
int pc_poses_num_joints(const pc_pose_set* set) { return set ? set->num_joints : 0; }

pc_status pc_poses_get(const pc_pose_set* set, size_t index, int64_t* frame, double* joints_mm,
                       size_t capacity) {
  if (!set) return null_arg("set");
  if (index >= set->frames.size()) return set_error(PC_ERR_INVALID_ARGUMENT, "frame index out of range");
  const auto& f = set->frames[index];
  if (frame) *frame = f.frame;
  if (joints_mm) {
    if (capacity < 3 * f.pose.joints_mm.size())
      return set_error(PC_ERR_INVALID_ARGUMENT, "output buffer too small");
    for (std::size_t j = 0; j < f.pose.joints_mm.size(); ++j)
      for (int c = 0; c < 3; ++c) joints_mm[3 * j + c] = f.pose.joints_mm[j][c];
  }
  return PC_OK;
}

void pc_poses_free(pc_pose_set* set) { delete set; }

pc_status pc_keypoints_read(const char* path, const pc_skeleton* skeleton, pc_keypoint_set** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new pc_keypoint_set{pc::read_keypoints(path, skeleton ? skeleton->spec.num_joints() : 0)};
    return PC_OK;
  });
}

size_t pc_keypoints_count(const pc_keypoint_set* set) { return set ? set->frames.size() : 0; }
void pc_keypoints_free(pc_keypoint_set* set) { delete set; }

pc_status pc_maps_read(const char* path, pc_map_kind kind, pc_mode mode, pc_map_set** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] {
    const pc::MapArray array = pc::read_maps(path);
    auto set = std::make_unique<pc_map_set>();
    set->kind = kind;
    if (kind == PC_MAPS_HEATMAP)
      set->heatmaps = pc::unpack_heatmaps(array);
    else if (kind == PC_MAPS_ORIENTATION)
      set->orientation = pc::unpack_orientation_maps(array, to_mode(mode));
    else
      throw pc::Error(pc::ErrorCode::kInvalidArgument, "unknown map kind");
    *out = set.release();
    return PC_OK;
  });
}

pc_status pc_maps_write(const pc_map_set* maps, const char* path, pc_dtype dtype) {
  if (!maps) return null_arg("maps");
  if (!path) return null_arg("path");
  return guarded([&] {
    pc::write_maps(path, maps->kind == PC_MAPS_HEATMAP
                             ? pc::pack_heatmaps(maps->heatmaps, to_dtype(dtype))
                             : pc::pack_orientation_maps(maps->orientation, to_dtype(dtype)));
    return PC_OK;
  });
}

size_t pc_maps_frames(const pc_map_set* maps) {
  if (!maps) return 0;
  return maps->kind == PC_MAPS_HEATMAP ? maps->heatmaps.size() : maps->orientation.size();
}

pc_map_kind pc_maps_kind(const pc_map_set* maps) { return maps ? maps->kind : PC_MAPS_HEATMAP; }

int pc_maps_dims(const pc_map_set* maps, uint32_t* dims, size_t capacity) {
  if (!maps || pc_maps_frames(maps) == 0) return 0;
  std::vector<uint32_t> d;
  if (maps->kind == PC_MAPS_HEATMAP) {
    const auto& h = maps->heatmaps.front();
    d = {uint32_t(maps->heatmaps.size()), uint32_t(h.num_maps), uint32_t(h.grid.height),
         uint32_t(h.grid.width)};
  } else {
    const auto& o = maps->orientation.front();
    d = {uint32_t(maps->orientation.size()), uint32_t(o.num_limbs), 3, uint32_t(o.grid.height),
         uint32_t(o.grid.width)};
  }
  for (std::size_t i = 0; dims && i < d.size() && i < capacity; ++i) dims[i] = d[i];
  return static_cast<int>(d.size());
}

void pc_maps_free(pc_map_set* maps) { delete maps; }

void pc_encode_options_default(pc_encode_options* options) {
  if (!options) return;
  options->mode = PC_MODE_ORIENTATION;
  options->sigma_px = pc::kDefaultSigmaPx;
  options->map_h = 64;
  options->map_w = 64;
}

pc_status pc_encode(const pc_skeleton* skeleton, const pc_pose_set* poses,
                    const pc_keypoint_set* keypoints, const pc_encode_options* options,
                    pc_map_set** heatmaps, pc_map_set** orientation_maps) {
  if (!skeleton) return null_arg("skeleton");
  if (!poses) return null_arg("poses");
  if (!keypoints) return null_arg("keypoints");
  if (!heatmaps || !orientation_maps) return null_arg("outputs");
  pc_encode_options opts;
  pc_encode_options_default(&opts);
  if (options) opts = *options;
  return guarded([&] {
    const auto& spec = skeleton->spec;
    if (poses->frames.size() != keypoints->frames.size())
      throw pc::Error(pc::ErrorCode::kShapeMismatch, "pose and keypoint files differ in frame count");
    if (opts.map_h <= 0 || opts.map_w <= 0)
      throw pc::Error(pc::ErrorCode::kInvalidArgument, "map size must be positive");
    const pc::GridSize grid{opts.map_h, opts.map_w};
    const pc::EncodingMode mode = to_mode(opts.mode);
    auto h = std::make_unique<pc_map_set>();
    auto o = std::make_unique<pc_map_set>();
    h->kind = PC_MAPS_HEATMAP;
    o->kind = PC_MAPS_ORIENTATION;
    const std::size_t n = poses->frames.size();
    h->heatmaps.resize(n);
    o->orientation.resize(n);
    pc::parallel_for(n, [&](std::size_t f) {
      if (poses->frames[f].frame != keypoints->frames[f].frame)
        throw pc::Error(pc::ErrorCode::kFrameOrder, "pose and keypoint frame indices differ");
      // Keypoints outside the grid cannot be rendered.
      pc::Keypoints2D kp = keypoints->frames[f].keypoints;
      for (int j = 0; j < kp.size(); ++j) {
        const auto& p = kp.points_px[j];
        kp.visible[j] = kp.visible[j] && p.x() >= 0 && p.x() < grid.width && p.y() >= 0 &&
                        p.y() < grid.height;
      }
      h->heatmaps[f] = pc::render_heatmaps(kp, opts.sigma_px, grid);
      o->orientation[f] = pc::render_orientation_maps(poses->frames[f].pose, kp, spec, grid, mode).maps;
    });
    *heatmaps = h.release();
    *orientation_maps = o.release();
    return PC_OK;
  });
}

pc_status pc_decode(const pc_skeleton* skeleton, const pc_map_set* heatmaps,
                    const pc_map_set* orientation_maps, const pc_pose_set* length_source,
                    pc_pose_set** out) {
  if (!skeleton) return null_arg("skeleton");
  if (!heatmaps || !orientation_maps) return null_arg("maps");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& spec = skeleton->spec;
    if (heatmaps->kind != PC_MAPS_HEATMAP || orientation_maps->kind != PC_MAPS_ORIENTATION)
      throw pc::Error(pc::ErrorCode::kInvalidArgument, "map sets passed in the wrong order");
    const std::size_t n = heatmaps->heatmaps.size();
    if (orientation_maps->orientation.size() != n)
      throw pc::Error(pc::ErrorCode::kShapeMismatch, "heatmap and orientation frame counts differ");
    if (length_source && length_source->frames.size() != n)
      throw pc::Error(pc::ErrorCode::kShapeMismatch, "length source frame count differs from maps");

    auto result = std::make_unique<pc_pose_set>();
    result->num_joints = spec.num_joints();
    result->frames.resize(n);
    pc::parallel_for(n, [&](std::size_t f) {
      const std::vector<double> lengths =
          length_source ? pc::limb_lengths(length_source->frames[f].pose, spec) : spec.ref_lengths_mm();
      try {
        auto d = pc::decode_pose(heatmaps->heatmaps[f], orientation_maps->orientation[f], spec, lengths);
        const std::int64_t frame = length_source ? length_source->frames[f].frame : std::int64_t(f);
        result->frames[f] = {frame, std::move(d.pose)};
      } catch (const pc::LimbError& e) {
        throw pc::Error(e.code(), "frame " + std::to_string(f) + ", " + e.what());
      }
    });
    *out = result.release();
    return PC_OK;
  });
}

pc_status pc_mpjpe(const double* pred_mm, const double* gt_mm, int num_joints, int root, double* out) {
  if (!pred_mm || !gt_mm || !out) return null_arg("arguments");
  return guarded([&] {
    *out = pc::mpjpe(pose_from_array(pred_mm, num_joints), pose_from_array(gt_mm, num_joints), root);
    return PC_OK;
  });
}

pc_status pc_pa_mpjpe(const double* pred_mm, const double* gt_mm, int num_joints, double* out) {
  if (!pred_mm || !gt_mm || !out) return null_arg("arguments");
  return guarded([&] {
    *out = pc::procrustes_align(pose_from_array(pred_mm, num_joints), pose_from_array(gt_mm, num_joints))
               .residual_mm;
    return PC_OK;
  });
}

pc_status pc_pck(const double* errors_mm, size_t count, double threshold_mm, double* out) {
  if (!out) return null_arg("out");
  if (!errors_mm && count > 0) return null_arg("errors_mm");
  return guarded([&] {
    *out = pc::pck(std::span<const double>(errors_mm, count), threshold_mm);
    return PC_OK;
  });
}

pc_status pc_auc(const double* errors_mm, size_t count, double* out) {
  if (!out) return null_arg("out");
  if (!errors_mm && count > 0) return null_arg("errors_mm");
  return guarded([&] {
    *out = pc::auc(std::span<const double>(errors_mm, count));
    return PC_OK;
  });
}

pc_status pc_evaluate(const pc_skeleton* skeleton, const pc_pose_set* pred, const pc_pose_set* gt,
                      pc_report** out) {
  if (!skeleton || !pred || !gt) return null_arg("arguments");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& spec = skeleton->spec;
    if (pred->num_joints != gt->num_joints)
      throw pc::Error(pc::ErrorCode::kJointCountMismatch,
                      "prediction has " + std::to_string(pred->num_joints) +
                          " joints per frame, ground truth " + std::to_string(gt->num_joints));
    if (pred->num_joints != spec.num_joints())
      throw pc::Error(pc::ErrorCode::kJointCountMismatch, "poses do not match the skeleton");
    std::vector<pc::Pose3D> p, g;
    for (const auto& f : pred->frames) p.push_back(f.pose);
    for (const auto& f : gt->frames) g.push_back(f.pose);
    const auto report = pc::evaluate(p, g, spec.root());
    *out = new pc_report{pc::eval_report_json(report, pc::RunConfig{}, spec.joint_names()),
                         pc::eval_report_table(report, spec.joint_names())};
    return PC_OK;
  });
}

pc_status pc_synth_run(const pc_skeleton* skeleton, const char* scenario_path, const char* out_dir,
                       pc_dtype dtype) {
  if (!skeleton) return null_arg("skeleton");
  if (!scenario_path || !out_dir) return null_arg("paths");
  return guarded([&] {
    const auto& spec = skeleton->spec;
    const auto scenario = pc::parse_scenario_json(pc::read_text_file(scenario_path));
    const auto frames = pc::generate(scenario, spec);
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw pc::Error(pc::ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());

    std::vector<pc::PoseFrame> poses;
    std::vector<pc::KeypointFrame> kps;
    std::vector<pc::HeatmapStack> heat;
    std::vector<pc::OrientationMapStack> orient;
    std::string boxes;
    for (std::size_t f = 0; f < frames.size(); ++f) {
      poses.push_back({std::int64_t(f), frames[f].gt_pose});
      kps.push_back({std::int64_t(f), frames[f].gt_kp});
      heat.push_back(frames[f].heatmaps);
      orient.push_back(frames[f].orientation_maps);
      const auto& b = frames[f].bbox;
      boxes += nlohmann::json{{"frame", f}, {"bbox", {b.x, b.y, b.w, b.h}}}.dump() + "\n";
    }
    pc::write_poses(dir / "gt_poses.jsonl", poses);
    pc::write_keypoints(dir / "keypoints.jsonl", kps);
    pc::write_maps(dir / "heatmaps.posmap", pc::pack_heatmaps(heat, to_dtype(dtype)));
    pc::write_maps(dir / "orient.posmap", pc::pack_orientation_maps(orient, to_dtype(dtype)));
    pc::write_text_file(dir / "bboxes.jsonl", boxes);
    pc::write_text_file(dir / "scenario.json", pc::scenario_to_json(scenario) + "\n");
    return PC_OK;
  });
}

pc_status pc_bench_jitter(const pc_skeleton* skeleton, const char* scenario_path, int trials,
                          pc_report** out) {
  if (!skeleton) return null_arg("skeleton");
  if (!scenario_path) return null_arg("scenario_path");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto scenario = pc::parse_scenario_json(pc::read_text_file(scenario_path));
    const auto frames = pc::generate(scenario, skeleton->spec);
    const auto r = pc::jitter_protocol(frames, skeleton->spec, scenario.jitter_px,
                                       scenario.rescale_range, trials, scenario.seed);
    *out = new pc_report{pc::jitter_report_json(r, scenario), pc::jitter_report_table(r)};
    return PC_OK;
  });
}

pc_status pc_selftest(pc_report** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto results = pc::run_selftest();
    *out = new pc_report{pc::selftest_json(results), pc::selftest_table(results)};
    for (const auto& r : results)
      if (!r.passed) return set_error(PC_ERR_INVARIANT_FAILED, "self-test check failed: " + r.name);
    return PC_OK;
  });
}

const char* pc_report_json(const pc_report* report) { return report ? report->json.c_str() : ""; }
const char* pc_report_text(const pc_report* report) { return report ? report->text.c_str() : ""; }

pc_status pc_report_value(const pc_report* report, const char* key, double* out) {
  if (!report || !key || !out) return null_arg("arguments");
  return guarded([&] {
    std::string pointer = "/" + std::string(key);
    for (auto& c : pointer)
      if (c == '.') c = '/';
    const auto j = nlohmann::json::parse(report->json);
    const nlohmann::json::json_pointer ptr(pointer);
    if (!j.contains(ptr) || !j.at(ptr).is_number())
      throw pc::Error(pc::ErrorCode::kInvalidArgument, std::string("no numeric field ") + key);
    *out = j.at(ptr).get<double>();
    return PC_OK;
  });
}

void pc_report_free(pc_report* report) { delete report; }

}  // extern "C"

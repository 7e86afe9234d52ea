// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include "posecodec/core/synth.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "json.hpp"
#include "posecodec/core/error.hpp"
#include "posecodec/core/metrics.hpp"
#include "posecodec/core/parallel.hpp"

namespace posecodec {

namespace {

Eigen::Matrix3d random_rotation(CounterRng& rng, double max_rad) {
  const Vec3 axis = rng.unit_vector();
  const double angle = rng.uniform(0.0, max_rad);
  return Eigen::AngleAxisd(angle, axis).toRotationMatrix();
}

MeanStd mean_std(const std::vector<double>& v) {
  MeanStd out;
  if (v.empty()) return out;
  for (double x : v) out.mean += x;
  out.mean /= v.size();
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.stddev = std::sqrt(ss / (v.size() - 1));
  }
  return out;
}

// Source pixel index for a target pixel center, or -1 outside the source grid.
int source_index(double target_center, double to_origin, double to_extent, double from_origin,
                 double from_extent, int cells) {
  const double image = to_origin + target_center * to_extent / cells;
  const double src = (image - from_origin) * cells / from_extent;
  const double idx = std::floor(src);
  if (!(idx >= 0.0) || idx >= cells) return -1;
  return static_cast<int>(idx);
}

}  // namespace

void SynthScenario::validate() const {
  camera.validate();
  if (n_frames < 1) throw Error(ErrorCode::kInvalidArgument, "n_frames must be >= 1");
  if (map.height <= 0 || map.width <= 0) throw Error(ErrorCode::kInvalidArgument, "map size must be positive");
  if (!(sigma_px > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma_px must be positive");
  if (!(noise_sigma >= 0.0) || !(heatmap_noise_sigma >= 0.0) || !(jitter_px >= 0.0) ||
      !(rescale_range >= 0.0))
    throw Error(ErrorCode::kInvalidArgument, "noise, jitter and rescale magnitudes must be >= 0");
  if (rescale_range >= 1.0) throw Error(ErrorCode::kInvalidArgument, "rescale_range must be < 1");
  if (prior.kind == PosePrior::Kind::kRandomAngles && !(prior.max_deg >= 0.0))
    throw Error(ErrorCode::kInvalidArgument, "max_deg must be >= 0");
}

SynthScenario parse_scenario_json(const std::string& text) {
  SynthScenario s;
  try {
    const auto j = nlohmann::json::parse(text);
    s.seed = j.value("seed", std::uint64_t{0});
    s.n_frames = j.value("n_frames", 1);
    if (j.contains("camera")) {
      const auto& c = j["camera"];
      s.camera.fx = c.value("fx", s.camera.fx);
      s.camera.fy = c.value("fy", s.camera.fy);
      s.camera.cx = c.value("cx", s.camera.cx);
      s.camera.cy = c.value("cy", s.camera.cy);
      s.camera.image_w = c.value("image_w", s.camera.image_w);
      s.camera.image_h = c.value("image_h", s.camera.image_h);
    }
    if (j.contains("map_size")) {
      const auto hw = j["map_size"].get<std::vector<int>>();
      if (hw.size() != 2) throw Error(ErrorCode::kFormat, "map_size must be [H, W]");
      s.map = {hw[0], hw[1]};
    }
    s.sigma_px = j.value("sigma_px", s.sigma_px);
    if (j.contains("mode")) {
      const auto m = j["mode"].get<std::string>();
      if (m == "orientation") s.mode = EncodingMode::kOrientation;
      else if (m == "limb_vector") s.mode = EncodingMode::kLimbVector;
      else throw Error(ErrorCode::kFormat, "mode must be orientation or limb_vector");
    }
    s.noise_sigma = j.value("noise_sigma", 0.0);
    s.heatmap_noise_sigma = j.value("heatmap_noise_sigma", 0.0);
    s.jitter_px = j.value("jitter_px", 0.0);
    s.rescale_range = j.value("rescale_range", 0.0);
    if (j.contains("pose_prior")) {
      const auto& p = j["pose_prior"];
      if (p.is_string() && p.get<std::string>() == "tpose") {
        s.prior.kind = PosePrior::Kind::kTPose;
      } else if (p.is_object() && p.contains("random_angles")) {
        s.prior.kind = PosePrior::Kind::kRandomAngles;
        s.prior.max_deg = p["random_angles"].get<double>();
      } else {
        throw Error(ErrorCode::kFormat, R"(pose_prior must be "tpose" or {"random_angles": deg})");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("scenario JSON: ") + e.what());
  }
  s.validate();
  return s;
}

std::string scenario_to_json(const SynthScenario& s) {
  nlohmann::json j;
  j["seed"] = s.seed;
  j["n_frames"] = s.n_frames;
  j["camera"] = {{"fx", s.camera.fx}, {"fy", s.camera.fy}, {"cx", s.camera.cx},
                 {"cy", s.camera.cy}, {"image_w", s.camera.image_w}, {"image_h", s.camera.image_h}};
  j["map_size"] = {s.map.height, s.map.width};
  j["sigma_px"] = s.sigma_px;
  j["mode"] = s.mode == EncodingMode::kOrientation ? "orientation" : "limb_vector";
  j["noise_sigma"] = s.noise_sigma;
  j["heatmap_noise_sigma"] = s.heatmap_noise_sigma;
  j["jitter_px"] = s.jitter_px;
  j["rescale_range"] = s.rescale_range;
  if (s.prior.kind == PosePrior::Kind::kTPose)
    j["pose_prior"] = "tpose";
  else
    j["pose_prior"] = {{"random_angles", s.prior.max_deg}};
  return j.dump(2);
}

Pose3D sample_pose(const PosePrior& prior, const SkeletonSpec& spec, CounterRng& rng) {
  Pose3D pose;
  pose.joints_mm.assign(spec.num_joints(), Vec3::Zero());
  std::vector<Eigen::Matrix3d> global(spec.num_joints(), Eigen::Matrix3d::Identity());
  const bool random = prior.kind == PosePrior::Kind::kRandomAngles;
  const double max_rad = prior.max_deg * std::numbers::pi / 180.0;

  Vec3 root(0.0, 0.0, kSubjectDepthMm);
  if (random) {
    root += Vec3(rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0), rng.uniform(-200.0, 200.0));
    global[spec.root()] = random_rotation(rng, max_rad);
  }
  pose.joints_mm[spec.root()] = root;
  for (int k : spec.limb_order()) {
    const Limb& l = spec.limbs()[k];
    global[l.child] = random ? Eigen::Matrix3d(global[l.parent] * random_rotation(rng, max_rad))
                             : global[l.parent];
    const Vec3 dir = (global[l.child] * spec.rest_directions()[k]).normalized();
    pose.joints_mm[l.child] = pose.joints_mm[l.parent] + dir * spec.ref_lengths_mm()[k];
  }
  return pose;
}

std::vector<FrameRecord> generate(const SynthScenario& scenario, const SkeletonSpec& spec) {
  scenario.validate();
  std::vector<FrameRecord> frames(scenario.n_frames);
  parallel_for(frames.size(), [&](std::size_t f) {
    FrameRecord& rec = frames[f];
    CounterRng pose_rng(scenario.seed, stream_id(StreamTag::kPose, f));
    rec.gt_pose = sample_pose(scenario.prior, spec, pose_rng);
    rec.image_kp = project(rec.gt_pose, scenario.camera);
    // The crop follows the subject even where it leaves the image.
    Keypoints2D all_visible = rec.image_kp;
    all_visible.visible.assign(all_visible.size(), true);
    rec.bbox = keypoint_bounds(all_visible, kBboxPadFraction);
    rec.window = CropWindow::around(rec.bbox, scenario.map);
    rec.gt_kp = to_map_coords(all_visible, rec.window, scenario.map);
    rec.heatmaps = render_heatmaps(rec.gt_kp, scenario.sigma_px, scenario.map);
    auto enc = render_orientation_maps(rec.gt_pose, rec.gt_kp, spec, scenario.map, scenario.mode);
    rec.orientation_maps = std::move(enc.maps);
    rec.limb_flags = std::move(enc.limb_flags);

    if (scenario.noise_sigma > 0.0) {
      CounterRng noise(scenario.seed, stream_id(StreamTag::kMapNoise, f));
      for (double& v : rec.orientation_maps.data) v += scenario.noise_sigma * noise.normal();
    }
    if (scenario.heatmap_noise_sigma > 0.0) {
      CounterRng noise(scenario.seed, stream_id(StreamTag::kHeatmapNoise, f));
      for (double& v : rec.heatmaps.data) v += scenario.heatmap_noise_sigma * noise.normal();
    }
  });
  return frames;
}

HeatmapStack resample_heatmaps(const HeatmapStack& maps, const CropWindow& from,
                               const CropWindow& to) {
  const GridSize g = maps.grid;
  std::vector<int> cols(g.width), rows(g.height);
  for (int c = 0; c < g.width; ++c)
    cols[c] = source_index(c + 0.5, to.x0, to.width, from.x0, from.width, g.width);
  for (int r = 0; r < g.height; ++r)
    rows[r] = source_index(r + 0.5, to.y0, to.height, from.y0, from.height, g.height);
  HeatmapStack out(maps.num_maps, g);
  for (int n = 0; n < maps.num_maps; ++n)
    for (int r = 0; r < g.height; ++r)
      for (int c = 0; c < g.width; ++c)
        if (rows[r] >= 0 && cols[c] >= 0) out.at(n, r, c) = maps.at(n, rows[r], cols[c]);
  return out;
}

OrientationMapStack resample_orientation_maps(const OrientationMapStack& maps,
                                              const CropWindow& from, const CropWindow& to) {
  const GridSize g = maps.grid;
  std::vector<int> cols(g.width), rows(g.height);
  for (int c = 0; c < g.width; ++c)
    cols[c] = source_index(c + 0.5, to.x0, to.width, from.x0, from.width, g.width);
  for (int r = 0; r < g.height; ++r)
    rows[r] = source_index(r + 0.5, to.y0, to.height, from.y0, from.height, g.height);
  OrientationMapStack out(maps.num_limbs, g, maps.mode);
  for (int k = 0; k < maps.num_limbs; ++k)
    for (int ch = 0; ch < 3; ++ch)
      for (int r = 0; r < g.height; ++r)
        for (int c = 0; c < g.width; ++c)
          if (rows[r] >= 0 && cols[c] >= 0) out.at(k, ch, r, c) = maps.at(k, ch, rows[r], cols[c]);
  return out;
}

namespace {

FrameDecode decode_one(const HeatmapStack& h, const OrientationMapStack& o, const FrameRecord& rec,
                       const SkeletonSpec& spec) {
  FrameDecode out;
  try {
    const auto lengths = limb_lengths(rec.gt_pose, spec);
    out.result = decode_pose(h, o, spec, lengths, rec.gt_pose.joints_mm[spec.root()]);
    out.ok = true;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace

std::vector<FrameDecode> decode_frames_gt(std::span<const FrameRecord> frames,
                                          const SkeletonSpec& spec) {
  std::vector<FrameDecode> out(frames.size());
  parallel_for(frames.size(), [&](std::size_t f) {
    out[f] = decode_one(frames[f].heatmaps, frames[f].orientation_maps, frames[f], spec);
  });
  return out;
}

std::vector<double> frame_errors(std::span<const FrameRecord> frames,
                                 std::span<const FrameDecode> decoded, const SkeletonSpec& spec) {
  std::vector<double> errors;
  errors.reserve(frames.size() * spec.num_joints());
  for (std::size_t f = 0; f < frames.size(); ++f) {
    if (!decoded[f].ok) {
      errors.insert(errors.end(), spec.num_joints(), std::numeric_limits<double>::infinity());
      continue;
    }
    const auto e = joint_errors_root_aligned(decoded[f].result.pose, frames[f].gt_pose, spec.root());
    errors.insert(errors.end(), e.begin(), e.end());
  }
  return errors;
}

JitterReport jitter_protocol(std::span<const FrameRecord> frames, const SkeletonSpec& spec,
                             double jitter_px, double rescale_range, int trials,
                             std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (frames.empty()) throw Error(ErrorCode::kEmptyInput, "no frames");
  if (!(jitter_px >= 0.0) || !(rescale_range >= 0.0) || rescale_range >= 1.0)
    throw Error(ErrorCode::kInvalidArgument, "jitter must be >= 0 and rescale in [0, 1)");

  JitterReport r;
  r.jitter_px = jitter_px;
  r.rescale_range = rescale_range;
  r.trials = trials;
  r.n_frames = static_cast<int>(frames.size());

  const auto mean_of = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / v.size();
  };

  const auto baseline = decode_frames_gt(frames, spec);
  const auto base_err = frame_errors(frames, baseline, spec);
  r.baseline_pck = pck(base_err);
  r.baseline_auc = auc(base_err);
  r.baseline_mpjpe_mm = mean_of(base_err);

  std::vector<double> trial_mpjpe;
  for (int t = 0; t < trials; ++t) {
    std::vector<FrameDecode> decoded(frames.size());
    parallel_for(frames.size(), [&](std::size_t f) {
      CounterRng rng(seed, stream_id(StreamTag::kJitter, (static_cast<std::uint64_t>(t) << 32) | f));
      const FrameRecord& rec = frames[f];
      const double dx = rng.uniform(-jitter_px, jitter_px);
      const double dy = rng.uniform(-jitter_px, jitter_px);
      const double s = rng.uniform(1.0 - rescale_range, 1.0 + rescale_range);
      const Vec2 c = rec.bbox.center() + Vec2(dx, dy);
      const BoundingBox box{c.x() - 0.5 * s * rec.bbox.w, c.y() - 0.5 * s * rec.bbox.h,
                            s * rec.bbox.w, s * rec.bbox.h};
      const CropWindow window = CropWindow::around(box, rec.heatmaps.grid);
      decoded[f] = decode_one(resample_heatmaps(rec.heatmaps, rec.window, window),
                              resample_orientation_maps(rec.orientation_maps, rec.window, window),
                              rec, spec);
    });
    for (std::size_t f = 0; f < frames.size(); ++f) {
      if (!decoded[f].ok) {
        ++r.failed_frames;
        continue;
      }
      if (!baseline[f].ok) continue;
      for (int k = 0; k < spec.num_limbs(); ++k)
        r.max_orientation_change_rad =
            std::max(r.max_orientation_change_rad,
                     angle_between(decoded[f].result.orientations[k], baseline[f].result.orientations[k]));
    }
    const auto err = frame_errors(frames, decoded, spec);
    r.trial_pck.push_back(pck(err));
    r.trial_auc.push_back(auc(err));
    trial_mpjpe.push_back(mean_of(err));
  }
  r.pck = mean_std(r.trial_pck);
  r.auc = mean_std(r.trial_auc);
  r.mpjpe_mm = mean_std(trial_mpjpe);
  return r;
}

std::string jitter_report_json(const JitterReport& r, const SynthScenario& scenario) {
  nlohmann::json j;
  j["config"] = {{"sigma_px", scenario.sigma_px},
                 {"map_size", {scenario.map.height, scenario.map.width}},
                 {"lambda", 0.2},
                 {"pck_threshold_mm", kPckThresholdMm},
                 {"auc_thresholds_mm", default_auc_thresholds()},
                 {"noise_sigma", scenario.noise_sigma},
                 {"heatmap_noise_sigma", scenario.heatmap_noise_sigma},
                 {"seed", scenario.seed}};
  j["jitter_px"] = r.jitter_px;
  j["rescale_range"] = r.rescale_range;
  j["trials"] = r.trials;
  j["n_frames"] = r.n_frames;
  j["baseline"] = {{"pck", r.baseline_pck}, {"auc", r.baseline_auc}, {"mpjpe_mm", r.baseline_mpjpe_mm}};
  j["jittered"] = {{"pck_mean", r.pck.mean},     {"pck_std", r.pck.stddev},
                   {"auc_mean", r.auc.mean},     {"auc_std", r.auc.stddev},
                   {"mpjpe_mm_mean", r.mpjpe_mm.mean}, {"mpjpe_mm_std", r.mpjpe_mm.stddev}};
  j["pck_drop"] = r.baseline_pck - r.pck.mean;
  j["auc_drop"] = r.baseline_auc - r.auc.mean;
  j["failed_frames"] = r.failed_frames;
  j["max_orientation_change_rad"] = r.max_orientation_change_rad;
  j["trial_pck"] = r.trial_pck;
  j["trial_auc"] = r.trial_auc;
  return j.dump(2) + "\n";
}

std::string jitter_report_table(const JitterReport& r) {
  char buf[512];
  std::string out;
  std::snprintf(buf, sizeof buf, "jitter +-%.1f px, rescale +-%.2f, %d trials x %d frames\n",
                r.jitter_px, r.rescale_range, r.trials, r.n_frames);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-10s %-28s %-28s\n", "", "PCK@150", "AUC");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-10s %-28.2f %-28.2f\n", "baseline", 100 * r.baseline_pck,
                100 * r.baseline_auc);
  out += buf;
  char pck_cell[64], auc_cell[64];
  std::snprintf(pck_cell, sizeof pck_cell, "%.2f±%.2f (drop %.2f)", 100 * r.pck.mean,
                100 * r.pck.stddev, 100 * (r.baseline_pck - r.pck.mean));
  std::snprintf(auc_cell, sizeof auc_cell, "%.2f±%.2f (drop %.2f)", 100 * r.auc.mean,
                100 * r.auc.stddev, 100 * (r.baseline_auc - r.auc.mean));
  std::snprintf(buf, sizeof buf, "%-10s %-29s %-29s\n", "jittered", pck_cell, auc_cell);
  out += buf;
  std::snprintf(buf, sizeof buf, "failed frames: %d, max orientation change: %.3g rad\n",
                r.failed_frames, r.max_orientation_change_rad);
  out += buf;
  return out;
}

}  // namespace posecodec

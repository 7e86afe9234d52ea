// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "posecodec/core/decode.hpp"
#include "posecodec/core/encode.hpp"
#include "posecodec/core/rng.hpp"

namespace posecodec {

struct PosePrior {
  enum class Kind { kTPose, kRandomAngles };
  Kind kind = Kind::kRandomAngles;
  double max_deg = 30.0;
};

/// Distance of the rest-pose root from the camera along the optical axis.
inline constexpr double kSubjectDepthMm = 2500.0;
inline constexpr double kBboxPadFraction = 0.1;

struct SynthScenario {
  std::uint64_t seed = 0;
  int n_frames = 1;
  CameraModel camera;
  GridSize map;
  double sigma_px = kDefaultSigmaPx;
  EncodingMode mode = EncodingMode::kOrientation;
  /// Additive Gaussian noise on orientation-map values.
  double noise_sigma = 0.0;
  /// Additive Gaussian noise on heatmap values.
  double heatmap_noise_sigma = 0.0;
  /// Decode-window jitter, in image pixels, used by the jitter protocol.
  double jitter_px = 0.0;
  double rescale_range = 0.0;
  PosePrior prior;

  void validate() const;
};

SynthScenario parse_scenario_json(const std::string& text);
std::string scenario_to_json(const SynthScenario& s);

struct FrameRecord {
  Pose3D gt_pose;
  /// Projected joints in image pixels.
  Keypoints2D image_kp;
  /// Joints in map pixels (the encoder's input).
  Keypoints2D gt_kp;
  HeatmapStack heatmaps;
  OrientationMapStack orientation_maps;
  BoundingBox bbox;
  CropWindow window;
  std::vector<std::uint8_t> limb_flags;
};

/// Rest pose for tpose; otherwise every limb's rest direction is rotated by
/// its parent's accumulated rotation times a random rotation of at most
/// max_deg, and limbs are chained with reference lengths.
Pose3D sample_pose(const PosePrior& prior, const SkeletonSpec& spec, CounterRng& rng);

/// Frame f draws from streams derived from (seed, f) only, so output is
/// identical for any thread count.
std::vector<FrameRecord> generate(const SynthScenario& scenario, const SkeletonSpec& spec);

/// Nearest-neighbor resampling of maps rendered over `from` onto the grid of
/// window `to`. Samples that fall outside `from` are zero.
HeatmapStack resample_heatmaps(const HeatmapStack& maps, const CropWindow& from,
                               const CropWindow& to);
OrientationMapStack resample_orientation_maps(const OrientationMapStack& maps,
                                              const CropWindow& from, const CropWindow& to);

struct FrameDecode {
  bool ok = false;
  DecodeResult result;
  std::string error;
};

/// Decodes every frame with its own ground-truth limb lengths and root.
std::vector<FrameDecode> decode_frames_gt(std::span<const FrameRecord> frames,
                                          const SkeletonSpec& spec);

/// Root-aligned per-joint errors; failed frames contribute +inf for every
/// joint.
std::vector<double> frame_errors(std::span<const FrameRecord> frames,
                                 std::span<const FrameDecode> decoded, const SkeletonSpec& spec);

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

struct JitterReport {
  double jitter_px = 0.0;
  double rescale_range = 0.0;
  int trials = 0;
  int n_frames = 0;
  double baseline_pck = 0.0;
  double baseline_auc = 0.0;
  double baseline_mpjpe_mm = 0.0;
  MeanStd pck;
  MeanStd auc;
  MeanStd mpjpe_mm;
  std::vector<double> trial_pck;
  std::vector<double> trial_auc;
  /// Frames whose decode failed, summed over trials.
  int failed_frames = 0;
  /// Largest angle (rad) between a jittered and the unjittered decoded
  /// orientation, over frames that decoded in both.
  double max_orientation_change_rad = 0.0;
};

/// Per trial, shifts each frame's box by uniform offsets in
/// [-jitter_px, jitter_px]^2 and scales it by a factor in
/// [1 - rescale_range, 1 + rescale_range], resamples both map stacks into
/// the new window, decodes with ground-truth lengths and root, and scores.
JitterReport jitter_protocol(std::span<const FrameRecord> frames, const SkeletonSpec& spec,
                             double jitter_px, double rescale_range, int trials,
                             std::uint64_t seed);

std::string jitter_report_json(const JitterReport& r, const SynthScenario& scenario);
std::string jitter_report_table(const JitterReport& r);

}  // namespace posecodec

// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "posecodec/core/maps.hpp"

namespace posecodec {

/// Below this mean-vector norm a limb region carries no usable direction.
inline constexpr double kDegenerateMeanNorm = 1e-6;

struct ArgmaxResult {
  /// (col, row) pixel indices of each map's maximum.
  std::vector<Vec2> indices;
  /// kFlagFlatHeatmap where a map is constant.
  std::vector<std::uint8_t> joint_flags;
};

/// Row-major scan; the first occurrence of the maximum wins.
ArgmaxResult argmax_keypoints(const HeatmapStack& heatmaps);

/// Continuous map coordinates of the argmax pixel centers. Flat maps are
/// reported as not visible.
Keypoints2D keypoints_from_argmax(const ArgmaxResult& argmax);

struct LimbReading {
  Vec3 orientation = Vec3::Zero();
  int support = 0;
};

/// Averages limb k's map over the capsule spanned by its endpoint keypoints
/// and normalizes the mean. Throws LimbError(DegenerateOrientation) if the
/// mean is (near) zero.
LimbReading read_limb_orientation(const OrientationMapStack& maps, const Keypoints2D& kp,
                                  const SkeletonSpec& spec, int limb);

struct DecodeResult {
  Keypoints2D keypoints;
  std::vector<Vec3> orientations;
  std::vector<int> per_limb_support;
  Pose3D pose;
  std::vector<std::uint8_t> limb_flags;
  std::vector<std::uint8_t> joint_flags;
};

/// Argmax keypoints, per-limb orientation reads, then tree reconstruction
/// with the supplied limb lengths from `root_mm`.
DecodeResult decode_pose(const HeatmapStack& heatmaps, const OrientationMapStack& maps,
                         const SkeletonSpec& spec, std::span<const double> lengths_mm,
                         const Vec3& root_mm = Vec3::Zero());

}  // namespace posecodec

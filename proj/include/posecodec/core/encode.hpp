// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "posecodec/core/maps.hpp"

namespace posecodec {

inline constexpr double kDefaultSigmaPx = 2.0;

/// Unnormalized Gaussians (peak 1) evaluated at pixel centers. Invisible
/// joints yield all-zero maps.
HeatmapStack render_heatmaps(const Keypoints2D& kp, double sigma_px, GridSize grid);

struct OrientationEncoding {
  OrientationMapStack maps;
  /// One LimbFlag bitmask per limb; flagged limbs are left as background.
  std::vector<std::uint8_t> limb_flags;
};

/// Fills each limb's capsule region (built from `kp`, in map pixels) with
/// the limb's unit direction, or with the limb vector over the reference
/// torso length in limb-vector mode. Everything else is zero.
OrientationEncoding render_orientation_maps(const Pose3D& pose, const Keypoints2D& kp,
                                            const SkeletonSpec& spec, GridSize grid,
                                            EncodingMode mode);

}  // namespace posecodec

// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include "posecodec/core/encode.hpp"

#include <cmath>

#include "posecodec/core/error.hpp"

namespace posecodec {

HeatmapStack render_heatmaps(const Keypoints2D& kp, double sigma_px, GridSize grid) {
  if (!(sigma_px > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  if (grid.height <= 0 || grid.width <= 0)
    throw Error(ErrorCode::kInvalidArgument, "grid must be non-empty");
  HeatmapStack out(kp.size(), grid);
  const double inv_two_var = 1.0 / (2.0 * sigma_px * sigma_px);
  for (int n = 0; n < kp.size(); ++n) {
    if (!kp.visible[n]) continue;
    const Vec2& c = kp.points_px[n];
    for (int row = 0; row < grid.height; ++row) {
      const double dy = row + 0.5 - c.y();
      for (int col = 0; col < grid.width; ++col) {
        const double dx = col + 0.5 - c.x();
        out.at(n, row, col) = std::exp(-(dx * dx + dy * dy) * inv_two_var);
      }
    }
  }
  return out;
}

OrientationEncoding render_orientation_maps(const Pose3D& pose, const Keypoints2D& kp,
                                            const SkeletonSpec& spec, GridSize grid,
                                            EncodingMode mode) {
  if (kp.size() != spec.num_joints())
    throw Error(ErrorCode::kJointCountMismatch, "keypoint count does not match skeleton");
  if (grid.height <= 0 || grid.width <= 0)
    throw Error(ErrorCode::kInvalidArgument, "grid must be non-empty");
  const LimbVectorSet limbs = pose_to_limb_vectors(pose, spec);
  const double torso = spec.torso_length_mm();

  OrientationEncoding out{OrientationMapStack(spec.num_limbs(), grid, mode),
                          std::vector<std::uint8_t>(spec.num_limbs(), kFlagNone)};
  for (int k = 0; k < spec.num_limbs(); ++k) {
    const Limb& l = spec.limbs()[k];
    if (limbs.zero_length[k]) out.limb_flags[k] |= kFlagZeroLength;
    if (!kp.visible[l.parent] || !kp.visible[l.child])
      out.limb_flags[k] |= kFlagInvisibleEndpoint;
    if (out.limb_flags[k] != kFlagNone) continue;

    const Vec3 value = mode == EncodingMode::kOrientation ? limbs.orientations[k]
                                                          : Vec3(limbs.vectors[k] / torso);
    const CapsuleRegion region = rasterize_capsule(
        kp.points_px[l.parent], kp.points_px[l.child], spec.limb_widths_px()[k], grid);
    for (int row = 0; row < grid.height; ++row)
      for (int col = 0; col < grid.width; ++col)
        if (region.contains(row, col)) out.maps.set_pixel(k, row, col, value);
  }
  return out;
}

}  // namespace posecodec

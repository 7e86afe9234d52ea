// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include "posecodec/core/decode.hpp"

#include "posecodec/core/error.hpp"

namespace posecodec {

ArgmaxResult argmax_keypoints(const HeatmapStack& heatmaps) {
  ArgmaxResult out;
  out.indices.reserve(heatmaps.num_maps);
  out.joint_flags.assign(heatmaps.num_maps, kFlagNone);
  const GridSize g = heatmaps.grid;
  for (int n = 0; n < heatmaps.num_maps; ++n) {
    int best_row = 0, best_col = 0;
    double best = heatmaps.at(n, 0, 0);
    double lowest = best;
    for (int row = 0; row < g.height; ++row) {
      for (int col = 0; col < g.width; ++col) {
        const double v = heatmaps.at(n, row, col);
        if (v > best) {
          best = v;
          best_row = row;
          best_col = col;
        }
        if (v < lowest) lowest = v;
      }
    }
    if (best == lowest) out.joint_flags[n] |= kFlagFlatHeatmap;
    out.indices.emplace_back(best_col, best_row);
  }
  return out;
}

Keypoints2D keypoints_from_argmax(const ArgmaxResult& argmax) {
  Keypoints2D kp;
  for (std::size_t n = 0; n < argmax.indices.size(); ++n) {
    kp.points_px.push_back(argmax.indices[n] + Vec2(0.5, 0.5));
    kp.visible.push_back((argmax.joint_flags[n] & kFlagFlatHeatmap) == 0);
  }
  return kp;
}

LimbReading read_limb_orientation(const OrientationMapStack& maps, const Keypoints2D& kp,
                                  const SkeletonSpec& spec, int limb) {
  if (limb < 0 || limb >= spec.num_limbs() || limb >= maps.num_limbs)
    throw Error(ErrorCode::kInvalidArgument, "limb index out of range");
  const Limb& l = spec.limbs()[limb];
  if (!kp.visible[l.parent] || !kp.visible[l.child])
    throw LimbError(ErrorCode::kDegenerateOrientation, limb, "endpoint keypoint not detected");

  const CapsuleRegion region = rasterize_capsule(
      kp.points_px[l.parent], kp.points_px[l.child], spec.limb_widths_px()[limb], maps.grid);
  Vec3 sum = Vec3::Zero();
  for (int row = 0; row < maps.grid.height; ++row)
    for (int col = 0; col < maps.grid.width; ++col)
      if (region.contains(row, col)) sum += maps.pixel(limb, row, col);

  LimbReading out;
  out.support = region.count();
  if (out.support == 0)
    throw LimbError(ErrorCode::kDegenerateOrientation, limb, "empty limb region");
  const Vec3 mean = sum / out.support;
  const double norm = mean.norm();
  if (!(norm >= kDegenerateMeanNorm))
    throw LimbError(ErrorCode::kDegenerateOrientation, limb, "mean orientation vanishes");
  out.orientation = mean / norm;
  return out;
}

DecodeResult decode_pose(const HeatmapStack& heatmaps, const OrientationMapStack& maps,
                         const SkeletonSpec& spec, std::span<const double> lengths_mm,
                         const Vec3& root_mm) {
  if (heatmaps.num_maps != spec.num_joints())
    throw Error(ErrorCode::kShapeMismatch, "heatmap count does not match skeleton joints");
  if (maps.num_limbs != spec.num_limbs())
    throw Error(ErrorCode::kShapeMismatch, "orientation map count does not match limbs");
  if (!(heatmaps.grid == maps.grid))
    throw Error(ErrorCode::kShapeMismatch, "heatmap and orientation grids differ");
  if (static_cast<int>(lengths_mm.size()) != spec.num_limbs())
    throw Error(ErrorCode::kShapeMismatch, "need one length per limb");

  const ArgmaxResult argmax = argmax_keypoints(heatmaps);
  DecodeResult out;
  out.keypoints = keypoints_from_argmax(argmax);
  out.joint_flags = argmax.joint_flags;
  out.limb_flags.assign(spec.num_limbs(), kFlagNone);
  out.orientations.assign(spec.num_limbs(), Vec3::Zero());
  out.per_limb_support.assign(spec.num_limbs(), 0);
  for (int k = 0; k < spec.num_limbs(); ++k) {
    const Limb& l = spec.limbs()[k];
    if ((argmax.joint_flags[l.parent] | argmax.joint_flags[l.child]) & kFlagFlatHeatmap)
      out.limb_flags[k] |= kFlagInvisibleEndpoint;
    const LimbReading r = read_limb_orientation(maps, out.keypoints, spec, k);
    out.orientations[k] = r.orientation;
    out.per_limb_support[k] = r.support;
  }
  out.pose = reconstruct_pose(out.orientations, lengths_mm, root_mm, spec);
  return out;
}

}  // namespace posecodec

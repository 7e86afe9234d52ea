// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include "posecodec/core/camgeom.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "posecodec/core/error.hpp"

namespace posecodec {

void CameraModel::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "focal lengths must be positive");
  if (image_w <= 0 || image_h <= 0)
    throw Error(ErrorCode::kInvalidArgument, "image size must be positive");
  if (!(cx >= 0.0 && cx < image_w) || !(cy >= 0.0 && cy < image_h))
    throw Error(ErrorCode::kInvalidArgument, "principal point must lie inside the image");
}

Keypoints2D project(const Pose3D& pose, const CameraModel& cam) {
  Keypoints2D kp;
  kp.points_px.reserve(pose.joints_mm.size());
  kp.visible.reserve(pose.joints_mm.size());
  for (std::size_t j = 0; j < pose.joints_mm.size(); ++j) {
    const Vec3& p = pose.joints_mm[j];
    if (!(p.z() > 0.0))
      throw Error(ErrorCode::kBehindCamera, "joint " + std::to_string(j) + " has z <= 0");
    const double x = cam.fx * p.x() / p.z() + cam.cx;
    const double y = cam.fy * p.y() / p.z() + cam.cy;
    kp.points_px.emplace_back(x, y);
    kp.visible.push_back(x >= 0.0 && x < cam.image_w && y >= 0.0 && y < cam.image_h);
  }
  return kp;
}

double point_segment_distance_sq(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len_sq = ab.squaredNorm();
  double t = 0.0;
  if (len_sq > 0.0) t = std::clamp((p - a).dot(ab) / len_sq, 0.0, 1.0);
  return (p - (a + t * ab)).squaredNorm();
}

CapsuleRegion rasterize_capsule(const Vec2& a_in, const Vec2& b_in, double width_px,
                                GridSize grid) {
  // Canonical endpoint order so the mask is bit-identical under swapping.
  const bool swap = std::tie(b_in.x(), b_in.y()) < std::tie(a_in.x(), a_in.y());
  const Vec2& a = swap ? b_in : a_in;
  const Vec2& b = swap ? a_in : b_in;
  if (!(width_px > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "capsule width must be positive");
  CapsuleRegion region(grid);
  // Only pixels whose centers fall in the segment's bounding box grown by
  // the width can qualify.
  const double lo_x = std::min(a.x(), b.x()) - width_px;
  const double hi_x = std::max(a.x(), b.x()) + width_px;
  const double lo_y = std::min(a.y(), b.y()) - width_px;
  const double hi_y = std::max(a.y(), b.y()) + width_px;
  if (!std::isfinite(lo_x) || !std::isfinite(hi_x) || !std::isfinite(lo_y) ||
      !std::isfinite(hi_y))
    return region;
  const int c0 = std::max(0, static_cast<int>(std::floor(lo_x - 0.5)));
  const int c1 = std::min(grid.width - 1, static_cast<int>(std::ceil(hi_x - 0.5)));
  const int r0 = std::max(0, static_cast<int>(std::floor(lo_y - 0.5)));
  const int r1 = std::min(grid.height - 1, static_cast<int>(std::ceil(hi_y - 0.5)));
  const double w_sq = width_px * width_px;
  for (int row = r0; row <= r1; ++row) {
    for (int col = c0; col <= c1; ++col) {
      const Vec2 center(col + 0.5, row + 0.5);
      if (point_segment_distance_sq(center, a, b) <= w_sq) region.insert(row, col);
    }
  }
  return region;
}

BoundingBox keypoint_bounds(const Keypoints2D& kp, double pad_fraction) {
  double lo_x = INFINITY, lo_y = INFINITY, hi_x = -INFINITY, hi_y = -INFINITY;
  for (int j = 0; j < kp.size(); ++j) {
    if (!kp.visible[j]) continue;
    lo_x = std::min(lo_x, kp.points_px[j].x());
    hi_x = std::max(hi_x, kp.points_px[j].x());
    lo_y = std::min(lo_y, kp.points_px[j].y());
    hi_y = std::max(hi_y, kp.points_px[j].y());
  }
  if (!(lo_x <= hi_x)) throw Error(ErrorCode::kEmptyInput, "no visible keypoints");
  const double w = hi_x - lo_x;
  const double h = hi_y - lo_y;
  return {lo_x - pad_fraction * w, lo_y - pad_fraction * h, w * (1 + 2 * pad_fraction),
          h * (1 + 2 * pad_fraction)};
}

CropWindow CropWindow::around(const BoundingBox& box, GridSize grid) {
  const double aspect = static_cast<double>(grid.width) / grid.height;
  double width = std::max(box.w, box.h * aspect);
  if (!(width > 0.0)) width = 1.0;
  const double height = width / aspect;
  const Vec2 c = box.center();
  return {c.x() - 0.5 * width, c.y() - 0.5 * height, width, height};
}

Keypoints2D to_map_coords(const Keypoints2D& image_kp, const CropWindow& window,
                          GridSize grid) {
  Keypoints2D out;
  out.points_px.reserve(image_kp.points_px.size());
  for (int j = 0; j < image_kp.size(); ++j) {
    const Vec2 p = window.image_to_map(image_kp.points_px[j], grid);
    out.points_px.push_back(p);
    out.visible.push_back(image_kp.visible[j] && p.x() >= 0.0 && p.x() < grid.width &&
                          p.y() >= 0.0 && p.y() < grid.height);
  }
  return out;
}

}  // namespace posecodec

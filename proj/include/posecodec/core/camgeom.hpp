// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "posecodec/core/skeleton.hpp"

namespace posecodec {

using Vec2 = Eigen::Vector2d;

struct GridSize {
  int height = 64;
  int width = 64;

  int pixels() const { return height * width; }
  bool operator==(const GridSize&) const = default;
};

struct CameraModel {
  double fx = 1150.0;
  double fy = 1150.0;
  double cx = 500.0;
  double cy = 500.0;
  int image_w = 1000;
  int image_h = 1000;

  void validate() const;
};

/// 2D joint locations. Units depend on context: image pixels straight out of
/// `project`, map pixels once mapped through a crop window.
struct Keypoints2D {
  std::vector<Vec2> points_px;
  std::vector<bool> visible;

  int size() const { return static_cast<int>(points_px.size()); }
};

/// Binary pixel mask over an H x W grid, row-major.
class CapsuleRegion {
 public:
  explicit CapsuleRegion(GridSize grid) : grid_(grid), mask_(grid.pixels(), 0) {}

  GridSize grid() const { return grid_; }
  bool contains(int row, int col) const { return mask_[row * grid_.width + col] != 0; }
  int count() const { return count_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  void insert(int row, int col) {
    auto& m = mask_[row * grid_.width + col];
    if (!m) {
      m = 1;
      ++count_;
    }
  }

 private:
  GridSize grid_;
  std::vector<std::uint8_t> mask_;
  int count_ = 0;
};

/// Pinhole projection. Throws BehindCamera if any joint has z <= 0.
Keypoints2D project(const Pose3D& pose, const CameraModel& cam);

double point_segment_distance_sq(const Vec2& p, const Vec2& a, const Vec2& b);

/// Pixels whose centers (col + 0.5, row + 0.5) lie within `width_px` of
/// segment ab, boundary inclusive.
CapsuleRegion rasterize_capsule(const Vec2& a, const Vec2& b, double width_px,
                                GridSize grid);

/// Axis-aligned box in image pixels.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  Vec2 center() const { return {x + 0.5 * w, y + 0.5 * h}; }
};

/// Tight bounds of the visible keypoints, grown by `pad_fraction` of the
/// box size on every side.
BoundingBox keypoint_bounds(const Keypoints2D& kp, double pad_fraction);

/// Image region that is resampled onto the fixed-size map grid. The window
/// shares the grid's aspect ratio and is centered on the box it came from.
struct CropWindow {
  double x0 = 0.0;
  double y0 = 0.0;
  double width = 1.0;
  double height = 1.0;

  static CropWindow around(const BoundingBox& box, GridSize grid);

  Vec2 image_to_map(const Vec2& p, GridSize grid) const {
    return {(p.x() - x0) * grid.width / width, (p.y() - y0) * grid.height / height};
  }
  Vec2 map_to_image(const Vec2& p, GridSize grid) const {
    return {x0 + p.x() * width / grid.width, y0 + p.y() * height / grid.height};
  }
};

/// Maps image-pixel keypoints into map pixels; points that land outside the
/// grid become invisible.
Keypoints2D to_map_coords(const Keypoints2D& image_kp, const CropWindow& window,
                          GridSize grid);

}  // namespace posecodec

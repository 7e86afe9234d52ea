// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "posecodec/core/camgeom.hpp"

namespace posecodec {

/// N per-joint confidence grids, stored N x H x W row-major.
struct HeatmapStack {
  GridSize grid;
  int num_maps = 0;
  std::vector<double> data;

  HeatmapStack() = default;
  HeatmapStack(int n, GridSize g) : grid(g), num_maps(n), data(std::size_t(n) * g.pixels(), 0.0) {}

  double& at(int n, int row, int col) {
    return data[(std::size_t(n) * grid.height + row) * grid.width + col];
  }
  double at(int n, int row, int col) const {
    return data[(std::size_t(n) * grid.height + row) * grid.width + col];
  }
};

enum class EncodingMode : std::uint8_t {
  kOrientation = 0,  ///< unit limb direction
  kLimbVector = 1,   ///< limb vector divided by the reference torso length
};

/// K per-limb 3-channel grids, stored K x 3 x H x W row-major.
struct OrientationMapStack {
  GridSize grid;
  int num_limbs = 0;
  EncodingMode mode = EncodingMode::kOrientation;
  std::vector<double> data;

  OrientationMapStack() = default;
  OrientationMapStack(int k, GridSize g, EncodingMode m)
      : grid(g), num_limbs(k), mode(m), data(std::size_t(k) * 3 * g.pixels(), 0.0) {}

  double& at(int k, int c, int row, int col) {
    return data[((std::size_t(k) * 3 + c) * grid.height + row) * grid.width + col];
  }
  double at(int k, int c, int row, int col) const {
    return data[((std::size_t(k) * 3 + c) * grid.height + row) * grid.width + col];
  }
  Vec3 pixel(int k, int row, int col) const {
    return {at(k, 0, row, col), at(k, 1, row, col), at(k, 2, row, col)};
  }
  void set_pixel(int k, int row, int col, const Vec3& v) {
    at(k, 0, row, col) = v.x();
    at(k, 1, row, col) = v.y();
    at(k, 2, row, col) = v.z();
  }
};

/// Per-limb / per-joint status bits raised by encode and decode.
enum LimbFlag : std::uint8_t {
  kFlagNone = 0,
  kFlagZeroLength = 1 << 0,
  kFlagInvisibleEndpoint = 1 << 1,
  kFlagDegenerateOrientation = 1 << 2,
  kFlagFlatHeatmap = 1 << 3,
};

}  // namespace posecodec

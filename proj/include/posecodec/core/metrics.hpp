// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <span>
#include <vector>

#include "posecodec/core/skeleton.hpp"

namespace posecodec {

inline constexpr double kPckThresholdMm = 150.0;

/// 5, 10, ..., 150 mm.
std::vector<double> default_auc_thresholds();

/// Root-aligned per-joint Euclidean errors.
std::vector<double> joint_errors_root_aligned(const Pose3D& pred, const Pose3D& gt, int root);

/// Mean per-joint position error after translating both roots to coincide.
double mpjpe(const Pose3D& pred, const Pose3D& gt, int root);

struct SimilarityTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  double scale = 1.0;
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return scale * (rotation * p) + translation; }
};

struct ProcrustesResult {
  SimilarityTransform transform;
  Pose3D aligned;
  /// Mean per-joint distance between `aligned` and the target.
  double residual_mm = 0.0;
};

/// Least-squares similarity (rotation with det +1, uniform scale,
/// translation) taking `pred` onto `gt`. Throws DegenerateConfiguration when
/// the cross-covariance has rank < 2.
ProcrustesResult procrustes_align(const Pose3D& pred, const Pose3D& gt);

/// Fraction of errors <= threshold.
double pck(std::span<const double> errors_mm, double threshold_mm = kPckThresholdMm);

/// Mean PCK over `thresholds_mm` (default grid when empty).
double auc(std::span<const double> errors_mm, std::span<const double> thresholds_mm = {});

struct EvalReport {
  double mpjpe_mm = 0.0;
  double pa_mpjpe_mm = 0.0;
  double pck = 0.0;
  double auc = 0.0;
  std::vector<double> per_joint_mm;
  int n_frames = 0;
};

/// Aggregates all metrics over paired frames.
EvalReport evaluate(std::span<const Pose3D> preds, std::span<const Pose3D> gts, int root,
                    double pck_threshold_mm = kPckThresholdMm,
                    std::span<const double> auc_thresholds_mm = {});

}  // namespace posecodec

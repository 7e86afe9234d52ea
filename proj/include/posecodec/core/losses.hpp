// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "posecodec/core/maps.hpp"

namespace posecodec {

inline constexpr double kDefaultLambda = 0.2;
/// Probabilities are clamped to [eps, 1 - eps] before taking logs.
inline constexpr double kProbabilityClamp = 1e-12;

/// Loss value plus its gradient with respect to the prediction, laid out
/// like the prediction's data array.
struct LossValue {
  double value = 0.0;
  std::vector<double> gradient;
};

/// Sum over limbs, pixels and channels of the squared difference. No
/// averaging is applied.
LossValue orientation_loss(const OrientationMapStack& pred, const OrientationMapStack& gt);

/// Binary cross-entropy on post-sigmoid probabilities, divided by the number
/// of maps. The gradient is taken with respect to the probabilities and is
/// zero where clamping is active.
LossValue heatmap_loss(const HeatmapStack& pred_prob, const HeatmapStack& gt);

struct LossReport {
  double orientation_loss = 0.0;
  double heatmap_loss = 0.0;
  double total = 0.0;
  double lambda = kDefaultLambda;

  static LossReport combine(double orientation, double heatmap, double lambda = kDefaultLambda) {
    return {orientation, heatmap, orientation + lambda * heatmap, lambda};
  }
};

LossReport total_loss(const OrientationMapStack& pred_o, const OrientationMapStack& gt_o,
                      const HeatmapStack& pred_p, const HeatmapStack& gt_p,
                      double lambda = kDefaultLambda);

}  // namespace posecodec

// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include "posecodec/core/losses.hpp"

#include <algorithm>
#include <cmath>

#include "posecodec/core/error.hpp"

namespace posecodec {

LossValue orientation_loss(const OrientationMapStack& pred, const OrientationMapStack& gt) {
  if (pred.num_limbs != gt.num_limbs || !(pred.grid == gt.grid) ||
      pred.data.size() != gt.data.size())
    throw Error(ErrorCode::kShapeMismatch, "orientation stacks differ in shape");
  LossValue out;
  out.gradient.resize(pred.data.size());
  for (std::size_t i = 0; i < pred.data.size(); ++i) {
    const double d = pred.data[i] - gt.data[i];
    out.value += d * d;
    out.gradient[i] = 2.0 * d;
  }
  return out;
}

LossValue heatmap_loss(const HeatmapStack& pred_prob, const HeatmapStack& gt) {
  if (pred_prob.num_maps != gt.num_maps || !(pred_prob.grid == gt.grid) ||
      pred_prob.data.size() != gt.data.size())
    throw Error(ErrorCode::kShapeMismatch, "heatmap stacks differ in shape");
  if (pred_prob.num_maps == 0) throw Error(ErrorCode::kEmptyInput, "no heatmaps");
  const double inv_n = 1.0 / pred_prob.num_maps;
  constexpr double lo = kProbabilityClamp;
  constexpr double hi = 1.0 - kProbabilityClamp;
  LossValue out;
  out.gradient.resize(pred_prob.data.size());
  for (std::size_t i = 0; i < pred_prob.data.size(); ++i) {
    const double raw = pred_prob.data[i];
    const double p = std::clamp(raw, lo, hi);
    const double g = gt.data[i];
    out.value -= g * std::log(p) + (1.0 - g) * std::log1p(-p);
    out.gradient[i] = (raw > lo && raw < hi) ? -inv_n * (g / p - (1.0 - g) / (1.0 - p)) : 0.0;
  }
  out.value *= inv_n;
  return out;
}

LossReport total_loss(const OrientationMapStack& pred_o, const OrientationMapStack& gt_o,
                      const HeatmapStack& pred_p, const HeatmapStack& gt_p, double lambda) {
  return LossReport::combine(orientation_loss(pred_o, gt_o).value,
                             heatmap_loss(pred_p, gt_p).value, lambda);
}

}  // namespace posecodec

// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "posecodec/core/camgeom.hpp"
#include "posecodec/core/encode.hpp"
#include "posecodec/core/losses.hpp"
#include "posecodec/core/metrics.hpp"

namespace posecodec {

/// Defaults echoed into every report header.
struct RunConfig {
  double sigma_px = kDefaultSigmaPx;
  GridSize map;
  double lambda = kDefaultLambda;
  double pck_threshold_mm = kPckThresholdMm;
};

std::string eval_report_json(const EvalReport& r, const RunConfig& config,
                             const std::vector<std::string>& joint_names);
std::string eval_report_table(const EvalReport& r, const std::vector<std::string>& joint_names);

}  // namespace posecodec

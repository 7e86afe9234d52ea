// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace posecodec {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// End-to-end invariant suite: round-trip exactness, scale invariance,
/// loss gradients, Procrustes recovery, metric oracles, and determinism of
/// the map container. Every tolerance is fixed here.
std::vector<CheckResult> run_selftest();

std::string selftest_table(const std::vector<CheckResult>& results);
std::string selftest_json(const std::vector<CheckResult>& results);

}  // namespace posecodec

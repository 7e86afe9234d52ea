// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include "posecodec/core/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace posecodec {

std::string eval_report_json(const EvalReport& r, const RunConfig& config,
                             const std::vector<std::string>& joint_names) {
  nlohmann::ordered_json j;
  j["config"] = {{"sigma_px", config.sigma_px},
                 {"map_size", {config.map.height, config.map.width}},
                 {"lambda", config.lambda},
                 {"pck_threshold_mm", config.pck_threshold_mm},
                 {"auc_thresholds_mm", default_auc_thresholds()}};
  j["n_frames"] = r.n_frames;
  j["mpjpe_mm"] = r.mpjpe_mm;
  j["pa_mpjpe_mm"] = r.pa_mpjpe_mm;
  j["pck"] = r.pck;
  j["auc"] = r.auc;
  nlohmann::ordered_json per_joint;
  for (std::size_t i = 0; i < r.per_joint_mm.size(); ++i) {
    const std::string name = i < joint_names.size() ? joint_names[i] : "joint_" + std::to_string(i);
    per_joint[name] = r.per_joint_mm[i];
  }
  j["per_joint_mm"] = per_joint;
  return j.dump(2) + "\n";
}

std::string eval_report_table(const EvalReport& r, const std::vector<std::string>& joint_names) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-16s %12s\n", "metric", "value");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-16s %12d\n", "frames", r.n_frames);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-16s %12.4f\n", "MPJPE (mm)", r.mpjpe_mm);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-16s %12.4f\n", "PA-MPJPE (mm)", r.pa_mpjpe_mm);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-16s %12.2f\n", "PCK@150 (%)", 100.0 * r.pck);
  out += buf;
  std::snprintf(buf, sizeof buf, "%-16s %12.2f\n", "AUC (%)", 100.0 * r.auc);
  out += buf;
  out += "\n";
  std::snprintf(buf, sizeof buf, "%-16s %12s\n", "joint", "error (mm)");
  out += buf;
  for (std::size_t i = 0; i < r.per_joint_mm.size(); ++i) {
    const std::string name = i < joint_names.size() ? joint_names[i] : "joint_" + std::to_string(i);
    std::snprintf(buf, sizeof buf, "%-16s %12.4f\n", name.c_str(), r.per_joint_mm[i]);
    out += buf;
  }
  return out;
}

}  // namespace posecodec

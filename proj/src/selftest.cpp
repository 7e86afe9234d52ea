// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include "posecodec/core/selftest.hpp"

#include <Eigen/Geometry>
#include <Eigen/LU>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "json.hpp"
#include "posecodec/core/error.hpp"
#include "posecodec/core/losses.hpp"
#include "posecodec/core/metrics.hpp"
#include "posecodec/core/synth.hpp"
#include "posecodec/core/tensorio.hpp"

namespace posecodec {

namespace {

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

SynthScenario exact_scenario(int n_frames, std::uint64_t seed) {
  SynthScenario s;
  s.seed = seed;
  s.n_frames = n_frames;
  s.prior = {PosePrior::Kind::kRandomAngles, 30.0};
  return s;
}

CheckResult check_round_trip() {
  const auto spec = default_h36m_skeleton();
  const auto frames = generate(exact_scenario(1000, 7), spec);
  const auto decoded = decode_frames_gt(frames, spec);
  double worst = 0.0;
  int failed = 0;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    if (!decoded[f].ok) {
      ++failed;
      continue;
    }
    worst = std::max(worst, mpjpe(decoded[f].result.pose, frames[f].gt_pose, spec.root()));
  }
  return {"round-trip exactness (1000 frames)", failed == 0 && worst < 1e-6,
          "max MPJPE " + fmt("%.3g", worst) + " mm, failed " + std::to_string(failed)};
}

CheckResult check_scale_invariance() {
  const auto spec = default_h36m_skeleton();
  const auto frames = generate(exact_scenario(20, 11), spec);
  double orient_dev = 0.0, vector_dev = 0.0;
  for (const auto& rec : frames) {
    const auto base_o = render_orientation_maps(rec.gt_pose, rec.gt_kp, spec, rec.heatmaps.grid,
                                                EncodingMode::kOrientation);
    const auto base_v = render_orientation_maps(rec.gt_pose, rec.gt_kp, spec, rec.heatmaps.grid,
                                                EncodingMode::kLimbVector);
    for (double s : {0.5, 1.0, 2.5}) {
      Pose3D scaled = rec.gt_pose;
      for (auto& p : scaled.joints_mm) p *= s;
      const auto o = render_orientation_maps(scaled, rec.gt_kp, spec, rec.heatmaps.grid,
                                             EncodingMode::kOrientation);
      const auto v = render_orientation_maps(scaled, rec.gt_kp, spec, rec.heatmaps.grid,
                                             EncodingMode::kLimbVector);
      for (std::size_t i = 0; i < o.maps.data.size(); ++i) {
        orient_dev = std::max(orient_dev, std::abs(o.maps.data[i] - base_o.maps.data[i]));
        vector_dev = std::max(vector_dev, std::abs(v.maps.data[i] - s * base_v.maps.data[i]));
      }
    }
  }
  return {"scale invariance", orient_dev < 1e-12 && vector_dev < 1e-12,
          "orientation dev " + fmt("%.3g", orient_dev) + ", limb-vector dev " + fmt("%.3g", vector_dev)};
}

double relative_error(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max(1.0, std::abs(numeric));
}

CheckResult check_gradients() {
  constexpr double h = 1e-5;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    CounterRng rng(2024, stream_id(StreamTag::kTest, trial));
    const GridSize g{8, 8};
    OrientationMapStack po(2, g, EncodingMode::kOrientation), go = po;
    for (auto& v : po.data) v = rng.uniform(-1.0, 1.0);
    for (auto& v : go.data) v = rng.uniform(-1.0, 1.0);
    HeatmapStack pp(3, g), gp = pp;
    for (auto& v : pp.data) v = rng.uniform(0.05, 0.95);
    for (auto& v : gp.data) v = rng.uniform(0.0, 1.0);

    const auto lo = orientation_loss(po, go);
    for (std::size_t i = 0; i < po.data.size(); ++i) {
      auto plus = po, minus = po;
      plus.data[i] += h;
      minus.data[i] -= h;
      const double fd = (orientation_loss(plus, go).value - orientation_loss(minus, go).value) / (2 * h);
      worst = std::max(worst, relative_error(lo.gradient[i], fd));
    }
    const auto lp = heatmap_loss(pp, gp);
    for (std::size_t i = 0; i < pp.data.size(); ++i) {
      auto plus = pp, minus = pp;
      plus.data[i] += h;
      minus.data[i] -= h;
      const double fd = (heatmap_loss(plus, gp).value - heatmap_loss(minus, gp).value) / (2 * h);
      worst = std::max(worst, relative_error(lp.gradient[i], fd));
    }
  }
  return {"loss gradients vs finite differences", worst < 1e-4,
          "max relative error " + fmt("%.3g", worst)};
}

CheckResult check_procrustes() {
  const auto spec = default_h36m_skeleton();
  double worst = 0.0, worst_det = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    CounterRng rng(99, stream_id(StreamTag::kTest, trial));
    const Pose3D gt = sample_pose({PosePrior::Kind::kRandomAngles, 45.0}, spec, rng);
    const double s = rng.uniform(0.3, 3.0);
    const Eigen::Matrix3d r = Eigen::AngleAxisd(rng.uniform(0.0, 3.14159), rng.unit_vector()).toRotationMatrix();
    const Vec3 t(rng.uniform(-500, 500), rng.uniform(-500, 500), rng.uniform(-500, 500));
    Pose3D pred = gt;
    for (auto& p : pred.joints_mm) p = s * (r * p) + t;
    const auto res = procrustes_align(pred, gt);
    worst = std::max(worst, res.residual_mm);
    worst_det = std::max(worst_det, std::abs(res.transform.rotation.determinant() - 1.0));
  }
  return {"Procrustes recovery (200 poses)", worst < 1e-9 && worst_det < 1e-9,
          "max residual " + fmt("%.3g", worst) + " mm, max |det-1| " + fmt("%.3g", worst_det)};
}

CheckResult check_metric_oracles() {
  CounterRng rng(5, stream_id(StreamTag::kTest, 0));
  std::vector<double> errors(10000);
  for (auto& e : errors) e = rng.uniform(0.0, 300.0);
  // Brute-force double loop over thresholds and samples.
  const auto thresholds = default_auc_thresholds();
  double auc_sum = 0.0;
  double pck_oracle = 0.0;
  for (double t : thresholds) {
    std::size_t hits = 0;
    for (double e : errors) hits += e <= t ? 1 : 0;
    const double frac = static_cast<double>(hits) / errors.size();
    auc_sum += frac;
    if (t == 150.0) pck_oracle = frac;
  }
  const double auc_oracle = auc_sum / thresholds.size();
  const bool metrics_ok = pck(errors) == pck_oracle && auc(errors) == auc_oracle;

  const auto spec = default_h36m_skeleton();
  Pose3D a = sample_pose({PosePrior::Kind::kRandomAngles, 30.0}, spec, rng);
  Pose3D b = sample_pose({PosePrior::Kind::kRandomAngles, 30.0}, spec, rng);
  const Vec3 shift = b.joints_mm[spec.root()] - a.joints_mm[spec.root()];
  double sum = 0.0;
  for (int j = 0; j < a.size(); ++j) {
    const Vec3 d = a.joints_mm[j] + shift - b.joints_mm[j];
    sum += std::sqrt(d.x() * d.x() + d.y() * d.y() + d.z() * d.z());
  }
  const double oracle = sum / a.size();
  const double rel = std::abs(mpjpe(a, b, spec.root()) - oracle) / oracle;
  return {"metric oracles (PCK, AUC, MPJPE)", metrics_ok && rel < 1e-12,
          std::string(metrics_ok ? "PCK/AUC exact" : "PCK/AUC mismatch") + ", MPJPE rel " + fmt("%.3g", rel)};
}

CheckResult check_determinism_io() {
  const auto spec = default_h36m_skeleton();
  auto scenario = exact_scenario(8, 3);
  scenario.noise_sigma = 0.1;
  const auto a = generate(scenario, spec);
  const auto b = generate(scenario, spec);
  std::vector<OrientationMapStack> oa, ob;
  std::vector<HeatmapStack> ha, hb;
  for (const auto& r : a) oa.push_back(r.orientation_maps), ha.push_back(r.heatmaps);
  for (const auto& r : b) ob.push_back(r.orientation_maps), hb.push_back(r.heatmaps);
  const std::string bytes_a = serialize_maps(pack_orientation_maps(oa, Dtype::kF64));
  const std::string bytes_b = serialize_maps(pack_orientation_maps(ob, Dtype::kF64));
  const bool identical = bytes_a == bytes_b &&
                         serialize_maps(pack_heatmaps(ha, Dtype::kF32)) ==
                             serialize_maps(pack_heatmaps(hb, Dtype::kF32));

  const MapArray back = parse_maps(bytes_a);
  const bool round_trip = back.data == pack_orientation_maps(oa, Dtype::kF64).data;

  int detected = 0, trials = 0;
  for (std::size_t pos = 8; pos < bytes_a.size(); pos += bytes_a.size() / 97 + 1) {
    std::string corrupt = bytes_a;
    corrupt[pos] = static_cast<char>(corrupt[pos] ^ 0x5A);
    ++trials;
    try {
      parse_maps(corrupt);
    } catch (const Error&) {
      ++detected;
    }
  }
  return {"determinism and container I/O", identical && round_trip && detected == trials,
          std::string(identical ? "byte-identical" : "outputs differ") +
              (round_trip ? ", round-trip exact" : ", round-trip differs") + ", corruption detected " +
              std::to_string(detected) + "/" + std::to_string(trials)};
}

}  // namespace

std::vector<CheckResult> run_selftest() {
  const std::vector<std::function<CheckResult()>> checks = {
      check_round_trip, check_scale_invariance, check_gradients,
      check_procrustes, check_metric_oracles,   check_determinism_io};
  std::vector<CheckResult> results;
  for (const auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

std::string selftest_table(const std::vector<CheckResult>& results) {
  std::string out;
  char buf[512];
  int failed = 0;
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "[%s] %-40s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.seconds, r.detail.c_str());
    out += buf;
    failed += r.passed ? 0 : 1;
  }
  std::snprintf(buf, sizeof buf, "%zu checks, %d failed\n", results.size(), failed);
  out += buf;
  return out;
}

std::string selftest_json(const std::vector<CheckResult>& results) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : results)
    j.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
  return j.dump(2) + "\n";
}

}  // namespace posecodec

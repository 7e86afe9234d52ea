// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include "posecodec/core/metrics.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>

#include "posecodec/core/error.hpp"

namespace posecodec {

namespace {

void check_pair(const Pose3D& pred, const Pose3D& gt) {
  if (pred.size() != gt.size())
    throw Error(ErrorCode::kJointCountMismatch,
                "prediction has " + std::to_string(pred.size()) + " joints, ground truth " +
                    std::to_string(gt.size()));
  if (pred.size() == 0) throw Error(ErrorCode::kEmptyInput, "pose has no joints");
}

}  // namespace

std::vector<double> default_auc_thresholds() {
  std::vector<double> t;
  for (int mm = 5; mm <= 150; mm += 5) t.push_back(mm);
  return t;
}

std::vector<double> joint_errors_root_aligned(const Pose3D& pred, const Pose3D& gt, int root) {
  check_pair(pred, gt);
  if (root < 0 || root >= pred.size())
    throw Error(ErrorCode::kInvalidArgument, "root index out of range");
  const Vec3 offset = gt.joints_mm[root] - pred.joints_mm[root];
  std::vector<double> err(pred.size());
  for (int j = 0; j < pred.size(); ++j)
    err[j] = (pred.joints_mm[j] + offset - gt.joints_mm[j]).norm();
  return err;
}

double mpjpe(const Pose3D& pred, const Pose3D& gt, int root) {
  const auto err = joint_errors_root_aligned(pred, gt, root);
  double sum = 0.0;
  for (double e : err) sum += e;
  return sum / err.size();
}

ProcrustesResult procrustes_align(const Pose3D& pred, const Pose3D& gt) {
  check_pair(pred, gt);
  const int n = pred.size();
  if (n < 3) throw Error(ErrorCode::kDegenerateConfiguration, "need at least 3 joints");

  Vec3 mu_p = Vec3::Zero(), mu_g = Vec3::Zero();
  for (int j = 0; j < n; ++j) {
    mu_p += pred.joints_mm[j];
    mu_g += gt.joints_mm[j];
  }
  mu_p /= n;
  mu_g /= n;

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  double var_p = 0.0;
  for (int j = 0; j < n; ++j) {
    const Vec3 x = pred.joints_mm[j] - mu_p;
    const Vec3 y = gt.joints_mm[j] - mu_g;
    cov += y * x.transpose();
    var_p += x.squaredNorm();
  }
  cov /= n;
  var_p /= n;

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 sv = svd.singularValues();
  if (!(var_p > 0.0) || !(sv(1) > 1e-12 * sv(0)))
    throw Error(ErrorCode::kDegenerateConfiguration, "joint cross-covariance has rank < 2");

  // Flip the weakest axis when U V^T would be a reflection.
  Vec3 signs(1.0, 1.0, 1.0);
  if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) signs(2) = -1.0;

  ProcrustesResult out;
  SimilarityTransform& t = out.transform;
  t.rotation = svd.matrixU() * signs.asDiagonal() * svd.matrixV().transpose();
  t.scale = sv.dot(signs) / var_p;
  t.translation = mu_g - t.scale * (t.rotation * mu_p);

  out.aligned.joints_mm.resize(n);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    out.aligned.joints_mm[j] = t.apply(pred.joints_mm[j]);
    sum += (out.aligned.joints_mm[j] - gt.joints_mm[j]).norm();
  }
  out.residual_mm = sum / n;
  return out;
}

double pck(std::span<const double> errors_mm, double threshold_mm) {
  if (errors_mm.empty()) throw Error(ErrorCode::kEmptyInput, "no errors to score");
  if (!(threshold_mm > 0.0)) throw Error(ErrorCode::kInvalidArgument, "threshold must be positive");
  std::size_t hits = 0;
  for (double e : errors_mm)
    if (e <= threshold_mm) ++hits;
  return static_cast<double>(hits) / static_cast<double>(errors_mm.size());
}

double auc(std::span<const double> errors_mm, std::span<const double> thresholds_mm) {
  if (errors_mm.empty()) throw Error(ErrorCode::kEmptyInput, "no errors to score");
  const std::vector<double> grid = default_auc_thresholds();
  if (thresholds_mm.empty()) thresholds_mm = grid;
  double sum = 0.0;
  for (double t : thresholds_mm) sum += pck(errors_mm, t);
  return sum / static_cast<double>(thresholds_mm.size());
}

EvalReport evaluate(std::span<const Pose3D> preds, std::span<const Pose3D> gts, int root,
                    double pck_threshold_mm, std::span<const double> auc_thresholds_mm) {
  if (preds.size() != gts.size())
    throw Error(ErrorCode::kShapeMismatch, "prediction and ground-truth frame counts differ");
  if (preds.empty()) throw Error(ErrorCode::kEmptyInput, "no frames to evaluate");

  EvalReport r;
  r.n_frames = static_cast<int>(preds.size());
  const int n = gts.front().size();
  r.per_joint_mm.assign(n, 0.0);
  std::vector<double> all;
  all.reserve(preds.size() * n);
  double pa_sum = 0.0;
  for (std::size_t f = 0; f < preds.size(); ++f) {
    if (gts[f].size() != n) throw Error(ErrorCode::kJointCountMismatch, "inconsistent joint counts");
    const auto err = joint_errors_root_aligned(preds[f], gts[f], root);
    for (int j = 0; j < n; ++j) r.per_joint_mm[j] += err[j];
    all.insert(all.end(), err.begin(), err.end());
    pa_sum += procrustes_align(preds[f], gts[f]).residual_mm;
  }
  double sum = 0.0;
  for (double e : all) sum += e;
  r.mpjpe_mm = sum / all.size();
  r.pa_mpjpe_mm = pa_sum / preds.size();
  for (double& v : r.per_joint_mm) v /= preds.size();
  r.pck = pck(all, pck_threshold_mm);
  r.auc = auc(all, auc_thresholds_mm);
  return r;
}

}  // namespace posecodec

// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include "posecodec/core/skeleton.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>

#include "posecodec/core/error.hpp"

namespace posecodec {

namespace {

[[noreturn]] void bad_skeleton(const std::string& what) {
  throw Error(ErrorCode::kInvalidSkeleton, what);
}

}  // namespace

SkeletonSpec::SkeletonSpec(std::vector<std::string> joint_names,
                           std::vector<int> parent, std::vector<Limb> limbs,
                           std::vector<double> limb_width_px,
                           std::vector<double> ref_limb_length_mm,
                           int root_index)
    : joint_names_(std::move(joint_names)),
      parent_(std::move(parent)),
      limbs_(std::move(limbs)),
      widths_(std::move(limb_width_px)),
      ref_lengths_(std::move(ref_limb_length_mm)),
      root_(root_index) {
  const int n = static_cast<int>(joint_names_.size());
  if (n < 1) bad_skeleton("no joints");
  if (static_cast<int>(parent_.size()) != n)
    bad_skeleton("parents has " + std::to_string(parent_.size()) +
                 " entries, expected " + std::to_string(n));
  if (root_ < 0 || root_ >= n) bad_skeleton("root index out of range");
  if (parent_[root_] != root_) bad_skeleton("root must be its own parent");
  for (int j = 0; j < n; ++j) {
    if (j == root_) continue;
    if (parent_[j] < 0 || parent_[j] >= n || parent_[j] == j)
      bad_skeleton("joint " + std::to_string(j) + " has invalid parent");
  }
  // Every joint must reach the root within n steps, otherwise there is a cycle.
  for (int j = 0; j < n; ++j) {
    int cur = j;
    int steps = 0;
    while (cur != root_) {
      cur = parent_[cur];
      if (++steps > n) bad_skeleton("parent relation contains a cycle");
    }
  }

  const int k_count = static_cast<int>(limbs_.size());
  if (k_count != n - 1)
    bad_skeleton("expected " + std::to_string(n - 1) + " limbs, got " +
                 std::to_string(k_count));
  if (static_cast<int>(widths_.size()) != k_count ||
      static_cast<int>(ref_lengths_.size()) != k_count)
    bad_skeleton("widths and reference lengths must have one entry per limb");

  limb_of_child_.assign(n, -1);
  for (int k = 0; k < k_count; ++k) {
    const Limb& l = limbs_[k];
    if (l.child < 0 || l.child >= n || l.child == root_ || parent_[l.child] != l.parent)
      bad_skeleton("limb " + std::to_string(k) + " is not a tree edge");
    if (limb_of_child_[l.child] != -1)
      bad_skeleton("tree edge into joint " + std::to_string(l.child) + " listed twice");
    limb_of_child_[l.child] = k;
    if (!(widths_[k] > 0.0) || !std::isfinite(widths_[k]))
      bad_skeleton("limb width must be positive");
    if (!(ref_lengths_[k] > 0.0) || !std::isfinite(ref_lengths_[k]))
      bad_skeleton("reference length must be positive");
  }

  // Kahn order over joints; the min-heap breaks ties by joint index.
  std::vector<std::vector<int>> children(n);
  for (int j = 0; j < n; ++j)
    if (j != root_) children[parent_[j]].push_back(j);
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  ready.push(root_);
  while (!ready.empty()) {
    const int j = ready.top();
    ready.pop();
    if (j != root_) limb_order_.push_back(limb_of_child_[j]);
    for (int c : children[j]) ready.push(c);
  }

  torso_joint_ = -1;
  for (int j = 0; j < n; ++j)
    if (joint_names_[j] == "thorax") torso_joint_ = j;
  if (torso_joint_ < 0) {
    double best = -1.0;
    for (int k = 0; k < k_count; ++k) {
      if (limbs_[k].parent == root_ && ref_lengths_[k] > best) {
        best = ref_lengths_[k];
        torso_joint_ = limbs_[k].child;
      }
    }
    if (torso_joint_ < 0) torso_joint_ = root_;
  }

  rest_dirs_.assign(k_count, Vec3(0.0, 1.0, 0.0));
}

double SkeletonSpec::torso_length_mm() const {
  double total = 0.0;
  for (int j = torso_joint_; j != root_; j = parent_[j])
    total += ref_lengths_[limb_of_child_[j]];
  // A root torso joint would make limb-vector encoding divide by zero.
  return total > 0.0 ? total : *std::max_element(ref_lengths_.begin(), ref_lengths_.end());
}

void SkeletonSpec::set_torso_joint(int joint) {
  if (joint < 0 || joint >= num_joints() || joint == root_)
    bad_skeleton("torso joint must be a non-root joint");
  torso_joint_ = joint;
}

void SkeletonSpec::set_rest_directions(std::vector<Vec3> dirs) {
  if (static_cast<int>(dirs.size()) != num_limbs())
    bad_skeleton("rest_directions must have one entry per limb");
  for (auto& d : dirs) {
    const double len = d.norm();
    if (!(len > 0.0) || !std::isfinite(len)) bad_skeleton("rest direction must be nonzero");
    d /= len;
  }
  rest_dirs_ = std::move(dirs);
}

double SkeletonSpec::min_width_px() const {
  return *std::min_element(widths_.begin(), widths_.end());
}

SkeletonSpec default_h36m_skeleton() {
  std::vector<std::string> names = {
      "pelvis",     "r_hip",     "r_knee",  "r_ankle", "l_hip",     "l_knee",
      "l_ankle",    "spine",     "thorax",  "neck",    "head",      "l_shoulder",
      "l_elbow",    "l_wrist",   "r_shoulder", "r_elbow", "r_wrist"};
  std::vector<int> parent = {0, 0, 1, 2, 0, 4, 5, 0, 7, 8, 9, 8, 11, 12, 8, 14, 15};
  std::vector<Limb> limbs;
  for (int j = 1; j < 17; ++j) limbs.push_back({parent[j], j});

  // Average adult proportions (mm), symmetric left/right.
  std::vector<double> lengths = {
      132.0, 442.0, 454.0,         // right leg
      132.0, 442.0, 454.0,         // left leg
      233.0, 257.0, 121.0, 115.0,  // spine, thorax, neck, head
      151.0, 278.0, 251.0,         // left arm
      151.0, 278.0, 251.0};        // right arm
  // Widths at 64x64 map resolution: thicker for torso and thighs.
  std::vector<double> widths = {
      1.5, 2.0, 1.5,
      1.5, 2.0, 1.5,
      2.5, 2.5, 1.5, 2.0,
      1.5, 1.5, 1.0,
      1.5, 1.5, 1.0};

  SkeletonSpec spec(std::move(names), std::move(parent), std::move(limbs),
                    std::move(widths), std::move(lengths), 0);

  // Rest pose in camera coordinates (x right, y down, z forward), subject
  // facing the camera with arms stretched sideways.
  const Vec3 left(1, 0, 0), right(-1, 0, 0), down(0, 1, 0), up(0, -1, 0);
  spec.set_rest_directions({right, down, down, left, down, down, up, up, up, up,
                            left, left, left, right, right, right});
  return spec;
}

SkeletonSpec parse_skeleton_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("skeleton JSON: ") + e.what());
  }
  try {
    std::vector<Limb> limbs;
    for (const auto& pair : j.at("limbs")) {
      if (!pair.is_array() || pair.size() != 2)
        throw Error(ErrorCode::kFormat, "each limb must be a [parent, child] pair");
      limbs.push_back({pair[0].get<int>(), pair[1].get<int>()});
    }
    SkeletonSpec spec(j.at("joints").get<std::vector<std::string>>(),
                      j.at("parents").get<std::vector<int>>(), std::move(limbs),
                      j.at("widths_px").get<std::vector<double>>(),
                      j.at("ref_lengths_mm").get<std::vector<double>>(),
                      j.at("root").get<int>());
    if (j.contains("torso_joint")) spec.set_torso_joint(j["torso_joint"].get<int>());
    if (j.contains("rest_directions")) {
      std::vector<Vec3> dirs;
      for (const auto& d : j["rest_directions"]) {
        const auto v = d.get<std::vector<double>>();
        if (v.size() != 3) throw Error(ErrorCode::kFormat, "rest direction must have 3 components");
        dirs.emplace_back(v[0], v[1], v[2]);
      }
      spec.set_rest_directions(std::move(dirs));
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("skeleton JSON: ") + e.what());
  }
}

SkeletonSpec load_skeleton_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_skeleton_json(buf.str());
}

std::string skeleton_to_json(const SkeletonSpec& spec) {
  nlohmann::json j;
  j["joints"] = spec.joint_names();
  j["parents"] = spec.parents();
  auto limbs = nlohmann::json::array();
  for (const auto& l : spec.limbs()) limbs.push_back({l.parent, l.child});
  j["limbs"] = limbs;
  j["widths_px"] = spec.limb_widths_px();
  j["ref_lengths_mm"] = spec.ref_lengths_mm();
  j["root"] = spec.root();
  j["torso_joint"] = spec.torso_joint();
  auto dirs = nlohmann::json::array();
  for (const auto& d : spec.rest_directions()) dirs.push_back({d.x(), d.y(), d.z()});
  j["rest_directions"] = dirs;
  return j.dump(2);
}

LimbVectorSet pose_to_limb_vectors(const Pose3D& pose, const SkeletonSpec& spec) {
  if (pose.size() != spec.num_joints())
    throw Error(ErrorCode::kJointCountMismatch,
                "pose has " + std::to_string(pose.size()) + " joints, skeleton has " +
                    std::to_string(spec.num_joints()));
  const int k_count = spec.num_limbs();
  LimbVectorSet out;
  out.vectors.resize(k_count);
  out.lengths_mm.resize(k_count);
  out.orientations.assign(k_count, Vec3::Zero());
  out.zero_length.assign(k_count, false);
  for (int k = 0; k < k_count; ++k) {
    const Limb& l = spec.limbs()[k];
    const Vec3 v = pose.joints_mm[l.child] - pose.joints_mm[l.parent];
    const double len = v.norm();
    out.vectors[k] = v;
    out.lengths_mm[k] = len;
    if (len < kZeroLengthMm) {
      out.zero_length[k] = true;
    } else {
      out.orientations[k] = v / len;
    }
  }
  return out;
}

Pose3D reconstruct_pose(std::span<const Vec3> orientations,
                        std::span<const double> lengths_mm, const Vec3& root_mm,
                        const SkeletonSpec& spec) {
  const int k_count = spec.num_limbs();
  if (static_cast<int>(orientations.size()) != k_count ||
      static_cast<int>(lengths_mm.size()) != k_count)
    throw Error(ErrorCode::kShapeMismatch, "need one orientation and length per limb");
  for (int k = 0; k < k_count; ++k) {
    if (std::abs(orientations[k].norm() - 1.0) > kUnitTolerance)
      throw LimbError(ErrorCode::kNonUnitOrientation, k, "orientation is not unit length");
    if (!(lengths_mm[k] >= 0.0))
      throw LimbError(ErrorCode::kInvalidArgument, k, "negative limb length");
  }
  Pose3D pose;
  pose.joints_mm.assign(spec.num_joints(), Vec3::Zero());
  pose.joints_mm[spec.root()] = root_mm;
  for (int k : spec.limb_order()) {
    const Limb& l = spec.limbs()[k];
    pose.joints_mm[l.child] = pose.joints_mm[l.parent] + orientations[k] * lengths_mm[k];
  }
  return pose;
}

std::vector<double> limb_lengths(const Pose3D& pose, const SkeletonSpec& spec) {
  return pose_to_limb_vectors(pose, spec).lengths_mm;
}

}  // namespace posecodec

// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace posecodec {

using Vec3 = Eigen::Vector3d;

/// A skeleton edge; `child` is always the joint whose parent is `parent`.
struct Limb {
  int parent = 0;
  int child = 0;
};

/// Skeleton topology plus per-limb rendering widths and reference lengths.
///
/// Construction validates the tree: the parent array must describe a single
/// tree rooted at `root`, and the limb list must contain each tree edge
/// exactly once. Limbs are kept in the order given; `limb_order()` returns
/// them parent-before-child with ties broken by child joint index.
class SkeletonSpec {
 public:
  SkeletonSpec(std::vector<std::string> joint_names, std::vector<int> parent,
               std::vector<Limb> limbs, std::vector<double> limb_width_px,
               std::vector<double> ref_limb_length_mm, int root_index);

  int num_joints() const { return static_cast<int>(joint_names_.size()); }
  int num_limbs() const { return static_cast<int>(limbs_.size()); }
  int root() const { return root_; }

  const std::vector<std::string>& joint_names() const { return joint_names_; }
  const std::vector<int>& parents() const { return parent_; }
  const std::vector<Limb>& limbs() const { return limbs_; }
  const std::vector<double>& limb_widths_px() const { return widths_; }
  const std::vector<double>& ref_lengths_mm() const { return ref_lengths_; }
  const std::vector<int>& limb_order() const { return limb_order_; }

  /// Limb index whose child is `joint`, or -1 for the root.
  int limb_of_child(int joint) const { return limb_of_child_[joint]; }

  /// Sum of reference lengths from the root to the torso joint. Limb-vector
  /// encoding divides by this.
  double torso_length_mm() const;
  int torso_joint() const { return torso_joint_; }
  void set_torso_joint(int joint);

  /// Per-limb rest direction (unit) used by the synthetic pose sampler.
  const std::vector<Vec3>& rest_directions() const { return rest_dirs_; }
  void set_rest_directions(std::vector<Vec3> dirs);

  double min_width_px() const;

 private:
  std::vector<std::string> joint_names_;
  std::vector<int> parent_;
  std::vector<Limb> limbs_;
  std::vector<double> widths_;
  std::vector<double> ref_lengths_;
  int root_ = 0;
  int torso_joint_ = 0;
  std::vector<int> limb_order_;
  std::vector<int> limb_of_child_;
  std::vector<Vec3> rest_dirs_;
};

/// 17-joint Human3.6M-style skeleton rooted at the pelvis.
SkeletonSpec default_h36m_skeleton();

SkeletonSpec load_skeleton_json(const std::filesystem::path& path);
SkeletonSpec parse_skeleton_json(const std::string& text);
std::string skeleton_to_json(const SkeletonSpec& spec);

struct Pose3D {
  std::vector<Vec3> joints_mm;

  int size() const { return static_cast<int>(joints_mm.size()); }
};

struct LimbVectorSet {
  std::vector<Vec3> vectors;
  std::vector<double> lengths_mm;
  /// Unit vectors; zero where `zero_length[k]` is set.
  std::vector<Vec3> orientations;
  std::vector<bool> zero_length;
};

/// Lengths below this are treated as degenerate (ZeroLengthLimb flag).
inline constexpr double kZeroLengthMm = 1e-9;
inline constexpr double kUnitTolerance = 1e-6;

LimbVectorSet pose_to_limb_vectors(const Pose3D& pose, const SkeletonSpec& spec);

/// Places the root at `root_mm` and walks limbs parent-before-child,
/// adding orientation * length at each step.
Pose3D reconstruct_pose(std::span<const Vec3> orientations,
                        std::span<const double> lengths_mm, const Vec3& root_mm,
                        const SkeletonSpec& spec);

/// Actual limb lengths of a pose, in spec limb order.
std::vector<double> limb_lengths(const Pose3D& pose, const SkeletonSpec& spec);

}  // namespace posecodec

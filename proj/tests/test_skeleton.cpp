// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Geometry>

#include <queue>
#include <set>

#include "doctest.h"
#include "posecodec/core/error.hpp"
#include "posecodec/core/skeleton.hpp"
#include "test_util.hpp"

using namespace posecodec;
using posecodec::testing::random_pose;

namespace {

SkeletonSpec two_joint() { return SkeletonSpec({"a", "b"}, {0, 0}, {{0, 1}}, {1.0}, {100.0}, 0); }

SkeletonSpec chain3() {
  return SkeletonSpec({"a", "b", "c"}, {0, 0, 1}, {{0, 1}, {1, 2}}, {1.0, 1.0}, {50.0, 50.0}, 0);
}

}  // namespace

TEST_CASE("default skeleton has 17 joints and 16 limbs") {
  const auto spec = default_h36m_skeleton();
  CHECK(spec.num_joints() == 17);
  CHECK(spec.num_limbs() == 16);
  CHECK(spec.joint_names()[spec.root()] == "pelvis");

  std::vector<int> hits(17, 0);
  for (const auto& l : spec.limbs()) ++hits[l.child];
  for (int j = 0; j < 17; ++j) CHECK(hits[j] == (j == spec.root() ? 0 : 1));

  // BFS over the undirected limb graph reaches every joint.
  std::vector<std::vector<int>> adj(17);
  for (const auto& l : spec.limbs()) {
    adj[l.parent].push_back(l.child);
    adj[l.child].push_back(l.parent);
  }
  std::vector<bool> seen(17, false);
  std::queue<int> q;
  q.push(spec.root());
  seen[spec.root()] = true;
  while (!q.empty()) {
    const int j = q.front();
    q.pop();
    for (int n : adj[j])
      if (!seen[n]) seen[n] = true, q.push(n);
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("limb order visits parents before children") {
  const auto spec = default_h36m_skeleton();
  std::set<int> placed{spec.root()};
  int prev_child = -1;
  for (int k : spec.limb_order()) {
    CHECK(placed.count(spec.limbs()[k].parent) == 1);
    placed.insert(spec.limbs()[k].child);
    prev_child = spec.limbs()[k].child;
  }
  CHECK(prev_child >= 0);
  CHECK(placed.size() == 17);
}

TEST_CASE("invalid skeletons are rejected") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kOk;
  };
  // cycle between joints 1 and 2
  CHECK(code_of([] { SkeletonSpec({"a", "b", "c"}, {0, 2, 1}, {{2, 1}, {1, 2}}, {1, 1}, {1, 1}, 0); }) ==
        ErrorCode::kInvalidSkeleton);
  // missing limb
  CHECK(code_of([] { SkeletonSpec({"a", "b", "c"}, {0, 0, 1}, {{0, 1}}, {1}, {1}, 0); }) ==
        ErrorCode::kInvalidSkeleton);
  // duplicate edge
  CHECK(code_of([] { SkeletonSpec({"a", "b", "c"}, {0, 0, 1}, {{0, 1}, {0, 1}}, {1, 1}, {1, 1}, 0); }) ==
        ErrorCode::kInvalidSkeleton);
  // non-positive width
  CHECK(code_of([] { SkeletonSpec({"a", "b"}, {0, 0}, {{0, 1}}, {0.0}, {1}, 0); }) ==
        ErrorCode::kInvalidSkeleton);
  // root that is not its own parent
  CHECK(code_of([] { SkeletonSpec({"a", "b"}, {1, 0}, {{0, 1}}, {1}, {1}, 0); }) ==
        ErrorCode::kInvalidSkeleton);
}

TEST_CASE("skeleton JSON round-trips") {
  const auto spec = default_h36m_skeleton();
  const auto back = parse_skeleton_json(skeleton_to_json(spec));
  CHECK(back.joint_names() == spec.joint_names());
  CHECK(back.parents() == spec.parents());
  CHECK(back.ref_lengths_mm() == spec.ref_lengths_mm());
  CHECK(back.limb_widths_px() == spec.limb_widths_px());
  CHECK(back.torso_joint() == spec.torso_joint());
  CHECK(back.torso_length_mm() == doctest::Approx(490.0));
  CHECK_THROWS_AS(parse_skeleton_json("{\"joints\": [}"), Error);
  CHECK_THROWS_AS(parse_skeleton_json(R"({"joints": ["a"], "parents": [0]})"), Error);
}

TEST_CASE("pose_to_limb_vectors") {
  SUBCASE("axis-aligned limb") {
    const auto spec = two_joint();
    const Pose3D p{{Vec3(0, 0, 0), Vec3(100, 0, 0)}};
    const auto lv = pose_to_limb_vectors(p, spec);
    CHECK(lv.vectors[0] == Vec3(100, 0, 0));
    CHECK(lv.lengths_mm[0] == 100.0);
    CHECK(lv.orientations[0] == Vec3(1, 0, 0));
    CHECK_FALSE(lv.zero_length[0]);
  }
  SUBCASE("scaling keeps orientations and scales lengths") {
    const auto spec = default_h36m_skeleton();
    CounterRng rng(1, 1);
    for (int t = 0; t < 50; ++t) {
      const Pose3D p = random_pose(spec, rng);
      Pose3D q = p;
      for (auto& j : q.joints_mm) j *= 2.5;
      const auto a = pose_to_limb_vectors(p, spec);
      const auto b = pose_to_limb_vectors(q, spec);
      for (int k = 0; k < spec.num_limbs(); ++k) {
        CHECK((a.orientations[k] - b.orientations[k]).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(b.lengths_mm[k] == doctest::Approx(2.5 * a.lengths_mm[k]).epsilon(1e-12));
      }
    }
  }
  SUBCASE("lengths match per-edge distances") {
    const auto spec = default_h36m_skeleton();
    CounterRng rng(2, 1);
    const Pose3D p = random_pose(spec, rng);
    const auto lv = pose_to_limb_vectors(p, spec);
    for (int k = 0; k < spec.num_limbs(); ++k) {
      const auto& a = p.joints_mm[spec.limbs()[k].parent];
      const auto& b = p.joints_mm[spec.limbs()[k].child];
      const double d = std::sqrt((a.x() - b.x()) * (a.x() - b.x()) + (a.y() - b.y()) * (a.y() - b.y()) +
                                 (a.z() - b.z()) * (a.z() - b.z()));
      CHECK(lv.lengths_mm[k] == doctest::Approx(d).epsilon(1e-14));
      CHECK(std::abs(lv.orientations[k].norm() - 1.0) < 1e-9);
    }
  }
  SUBCASE("coincident joints raise the zero-length flag") {
    const auto spec = two_joint();
    const auto lv = pose_to_limb_vectors(Pose3D{{Vec3(5, 5, 5), Vec3(5, 5, 5)}}, spec);
    CHECK(lv.zero_length[0]);
    CHECK(lv.orientations[0] == Vec3::Zero());
  }
  SUBCASE("joint count mismatch") {
    CHECK_THROWS_AS(pose_to_limb_vectors(Pose3D{{Vec3::Zero()}}, two_joint()), Error);
  }
}

TEST_CASE("reconstruct_pose") {
  SUBCASE("single limb") {
    const std::vector<Vec3> u{Vec3(1, 0, 0)};
    const std::vector<double> len{100.0};
    const auto p = reconstruct_pose(u, len, Vec3::Zero(), two_joint());
    CHECK(p.joints_mm[1] == Vec3(100, 0, 0));
  }
  SUBCASE("colinear chain") {
    const std::vector<Vec3> u{Vec3(0, 1, 0), Vec3(0, 1, 0)};
    const std::vector<double> len{50.0, 50.0};
    const auto p = reconstruct_pose(u, len, Vec3::Zero(), chain3());
    CHECK(p.joints_mm[2] == Vec3(0, 100, 0));
  }
  SUBCASE("non-unit orientation is rejected") {
    const std::vector<Vec3> u{Vec3(1.01, 0, 0)};
    const std::vector<double> len{100.0};
    try {
      reconstruct_pose(u, len, Vec3::Zero(), two_joint());
      FAIL("expected NonUnitOrientation");
    } catch (const LimbError& e) {
      CHECK(e.code() == ErrorCode::kNonUnitOrientation);
      CHECK(e.limb() == 0);
    }
  }
  SUBCASE("round trip over 1000 random poses") {
    const auto spec = default_h36m_skeleton();
    CounterRng rng(3, 1);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const Pose3D p = random_pose(spec, rng);
      const auto lv = pose_to_limb_vectors(p, spec);
      const auto q = reconstruct_pose(lv.orientations, lv.lengths_mm, p.joints_mm[spec.root()], spec);
      worst = std::max(worst, posecodec::testing::max_joint_deviation(p, q));
    }
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("reconstruction is translation-equivariant") {
  const auto spec = default_h36m_skeleton();
  CounterRng rng(4, 1);
  const auto lv = pose_to_limb_vectors(random_pose(spec, rng), spec);
  const Vec3 t(12.5, -300.0, 42.0);
  const auto a = reconstruct_pose(lv.orientations, lv.lengths_mm, Vec3::Zero(), spec);
  const auto b = reconstruct_pose(lv.orientations, lv.lengths_mm, t, spec);
  for (int j = 0; j < spec.num_joints(); ++j) CHECK((b.joints_mm[j] - a.joints_mm[j] - t).norm() < 1e-9);
}

TEST_CASE("orientation error stays inside the limb's subtree") {
  const auto spec = default_h36m_skeleton();
  CounterRng rng(5, 1);
  const Pose3D p = random_pose(spec, rng);
  const auto lv = pose_to_limb_vectors(p, spec);
  const double theta = 1e-3;
  for (int k = 0; k < spec.num_limbs(); ++k) {
    auto u = lv.orientations;
    const Vec3 axis = u[k].unitOrthogonal();
    u[k] = Eigen::AngleAxisd(theta, axis) * u[k];
    const auto q = reconstruct_pose(u, lv.lengths_mm, p.joints_mm[spec.root()], spec);
    for (int j = 0; j < spec.num_joints(); ++j) {
      // Walk up from j; it is below limb k iff the walk crosses limb k's child.
      bool below = false;
      double path = 0.0;
      for (int c = j; c != spec.root(); c = spec.parents()[c]) {
        path += lv.lengths_mm[spec.limb_of_child(c)];
        if (c == spec.limbs()[k].child) below = true;
      }
      const double moved = (q.joints_mm[j] - p.joints_mm[j]).norm();
      if (below) {
        CHECK(moved > 0.0);
        CHECK(moved <= theta * path + 1e-9);
      } else {
        CHECK(moved < 1e-9);
      }
    }
  }
}

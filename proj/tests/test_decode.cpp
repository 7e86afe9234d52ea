// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "posecodec/core/decode.hpp"
#include "posecodec/core/encode.hpp"
#include "posecodec/core/error.hpp"
#include "test_util.hpp"

using namespace posecodec;
namespace pt = posecodec::testing;

namespace {

struct Encoded {
  Pose3D pose;
  HeatmapStack heatmaps;
  OrientationMapStack maps;
};

Encoded encode_random(const SkeletonSpec& spec, CounterRng& rng, GridSize g = {64, 64}) {
  Encoded e;
  e.pose = pt::random_pose(spec, rng);
  const auto f = pt::frame_pose(e.pose, CameraModel{}, g);
  e.heatmaps = render_heatmaps(f.map_kp, 2.0, g);
  e.maps = render_orientation_maps(e.pose, f.map_kp, spec, g, EncodingMode::kOrientation).maps;
  return e;
}

}  // namespace

TEST_CASE("argmax") {
  const GridSize g{16, 16};
  SUBCASE("single peak") {
    HeatmapStack h(1, g);
    h.at(0, 5, 3) = 1.0;
    const auto a = argmax_keypoints(h);
    CHECK(a.indices[0] == Vec2(3, 5));
    CHECK(a.joint_flags[0] == 0);
  }
  SUBCASE("ties resolve to the first pixel in row-major order") {
    HeatmapStack h(1, g);
    h.at(0, 0, 0) = 1.0;
    h.at(0, 10, 10) = 1.0;
    CHECK(argmax_keypoints(h).indices[0] == Vec2(0, 0));
  }
  SUBCASE("flat maps are flagged") {
    HeatmapStack h(1, g);
    const auto a = argmax_keypoints(h);
    CHECK((a.joint_flags[0] & kFlagFlatHeatmap) != 0);
    CHECK_FALSE(keypoints_from_argmax(a).visible[0]);
  }
  SUBCASE("random maps match an exhaustive scan") {
    CounterRng rng(30, 1);
    HeatmapStack h(8, g);
    for (auto& v : h.data) v = std::floor(rng.uniform() * 50.0);  // plenty of ties
    const auto a = argmax_keypoints(h);
    for (int n = 0; n < 8; ++n) {
      int br = 0, bc = 0;
      for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c)
          if (h.at(n, r, c) > h.at(n, br, bc)) br = r, bc = c;
      CHECK(a.indices[n] == Vec2(bc, br));
    }
  }
}

TEST_CASE("limb orientation read-out") {
  const GridSize g{32, 32};
  const SkeletonSpec two({"a", "b"}, {0, 0}, {{0, 1}}, {2.0}, {100.0}, 0);
  const Keypoints2D kp{{Vec2(8.5, 16.0), Vec2(24.5, 16.0)}, {true, true}};
  const auto region = rasterize_capsule(kp.points_px[0], kp.points_px[1], 2.0, g);
  const Vec3 u = Vec3(0.3, -0.4, 0.5).normalized();

  SUBCASE("constant region") {
    OrientationMapStack o(1, g, EncodingMode::kOrientation);
    for (int r = 0; r < 32; ++r)
      for (int c = 0; c < 32; ++c)
        if (region.contains(r, c)) o.set_pixel(0, r, c, u);
    const auto rd = read_limb_orientation(o, kp, two, 0);
    CHECK((rd.orientation - u).norm() < 1e-15);
    CHECK(rd.support == region.count());
  }
  SUBCASE("half and half") {
    OrientationMapStack o(1, g, EncodingMode::kOrientation);
    REQUIRE(region.count() % 2 == 0);
    int seen = 0;
    for (int r = 0; r < 32; ++r)
      for (int c = 0; c < 32; ++c)
        if (region.contains(r, c))
          o.set_pixel(0, r, c, seen++ < region.count() / 2 ? Vec3(1, 0, 0) : Vec3(0, 1, 0));
    const auto rd = read_limb_orientation(o, kp, two, 0);
    CHECK((rd.orientation - Vec3(1, 1, 0) / std::sqrt(2.0)).norm() < 1e-15);
  }
  SUBCASE("background zeros shrink the mean but keep its direction") {
    OrientationMapStack o(1, g, EncodingMode::kOrientation);
    for (int r = 0; r < 32; ++r)
      for (int c = 0; c < 32; ++c)
        if (region.contains(r, c)) o.set_pixel(0, r, c, u);
    CounterRng rng(31, 1);
    for (int t = 0; t < 100; ++t) {
      const Vec2 off(rng.uniform(-3, 3), rng.uniform(-3, 3));
      const Keypoints2D moved{{kp.points_px[0] + off, kp.points_px[1] + off}, {true, true}};
      const auto rd = read_limb_orientation(o, moved, two, 0);
      CHECK((rd.orientation - u).norm() < 1e-12);
    }
  }
  SUBCASE("all-zero limb map") {
    OrientationMapStack o(1, g, EncodingMode::kOrientation);
    try {
      read_limb_orientation(o, kp, two, 0);
      FAIL("expected DegenerateOrientation");
    } catch (const LimbError& e) {
      CHECK(e.code() == ErrorCode::kDegenerateOrientation);
      CHECK(e.limb() == 0);
    }
  }
}

TEST_CASE("decode_pose") {
  const auto spec = default_h36m_skeleton();
  CounterRng rng(32, 1);

  SUBCASE("exact maps with ground-truth lengths and root round-trip") {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const auto e = encode_random(spec, rng);
      const auto lengths = limb_lengths(e.pose, spec);
      const auto d = decode_pose(e.heatmaps, e.maps, spec, lengths, e.pose.joints_mm[spec.root()]);
      worst = std::max(worst, pt::max_joint_deviation(d.pose, e.pose));
    }
    CHECK(worst < 1e-6);
  }
  SUBCASE("reference lengths keep orientations and propagate length error") {
    const auto e = encode_random(spec, rng);
    const auto lv = pose_to_limb_vectors(e.pose, spec);
    const Vec3 root = e.pose.joints_mm[spec.root()];
    const auto d = decode_pose(e.heatmaps, e.maps, spec, spec.ref_lengths_mm(), root);
    for (int k = 0; k < spec.num_limbs(); ++k) CHECK((d.orientations[k] - lv.orientations[k]).norm() < 1e-12);
    const auto expect = reconstruct_pose(lv.orientations, spec.ref_lengths_mm(), root, spec);
    CHECK(pt::max_joint_deviation(d.pose, expect) < 1e-9);
  }
  SUBCASE("positive rescaling of orientation maps changes nothing") {
    const auto e = encode_random(spec, rng);
    auto scaled = e.maps;
    for (auto& v : scaled.data) v *= 3.7;
    const auto a = decode_pose(e.heatmaps, e.maps, spec, spec.ref_lengths_mm());
    const auto b = decode_pose(e.heatmaps, scaled, spec, spec.ref_lengths_mm());
    for (int k = 0; k < spec.num_limbs(); ++k) CHECK((a.orientations[k] - b.orientations[k]).norm() < 1e-12);
  }
  SUBCASE("an all-zero limb map names the limb") {
    auto e = encode_random(spec, rng);
    const int k = 5;
    for (int c = 0; c < 3; ++c)
      for (int r = 0; r < 64; ++r)
        for (int col = 0; col < 64; ++col) e.maps.at(k, c, r, col) = 0.0;
    try {
      decode_pose(e.heatmaps, e.maps, spec, spec.ref_lengths_mm());
      FAIL("expected DegenerateOrientation");
    } catch (const LimbError& err) {
      CHECK(err.code() == ErrorCode::kDegenerateOrientation);
      CHECK(err.limb() == k);
    }
  }
  SUBCASE("shape mismatches") {
    const auto e = encode_random(spec, rng);
    HeatmapStack small(17, GridSize{32, 32});
    CHECK_THROWS_AS(decode_pose(small, e.maps, spec, spec.ref_lengths_mm()), Error);
    const std::vector<double> short_lengths(3, 1.0);
    CHECK_THROWS_AS(decode_pose(e.heatmaps, e.maps, spec, short_lengths), Error);
  }
}

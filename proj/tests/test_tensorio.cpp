// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstring>

#include "doctest.h"
#include "posecodec/core/error.hpp"
#include "posecodec/core/tensorio.hpp"
#include "test_util.hpp"

using namespace posecodec;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

MapArray random_array(Dtype dtype, std::uint64_t seed) {
  CounterRng rng(seed, 1);
  MapArray a;
  a.dtype = dtype;
  a.dims = {3, 2, 5, 7};
  a.data.resize(a.element_count());
  for (auto& v : a.data) v = dtype == Dtype::kF32 ? static_cast<float>(rng.normal()) : rng.normal();
  return a;
}

}  // namespace

TEST_CASE("map container") {
  SUBCASE("f64 and f32 round-trip bit-exact") {
    for (Dtype dt : {Dtype::kF64, Dtype::kF32}) {
      const auto a = random_array(dt, 60);
      const std::string bytes = serialize_maps(a);
      const auto b = parse_maps(bytes);
      CHECK(b.dims == a.dims);
      CHECK(b.dtype == dt);
      CHECK(std::memcmp(a.data.data(), b.data.data(), a.data.size() * sizeof(double)) == 0);
      CHECK(serialize_maps(b) == bytes);
    }
  }
  SUBCASE("every single-byte payload corruption is caught") {
    const std::string bytes = serialize_maps(random_array(Dtype::kF32, 61));
    const std::size_t header = bytes.size() - 3 * 2 * 5 * 7 * 4 - 4;
    for (std::size_t i = header; i < bytes.size() - 4; ++i) {
      std::string bad = bytes;
      bad[i] ^= 0x5a;
      CHECK(code_of([&] { parse_maps(bad); }) == ErrorCode::kCrcMismatch);
    }
  }
  SUBCASE("truncation and bad magic") {
    const std::string bytes = serialize_maps(random_array(Dtype::kF64, 62));
    CHECK(code_of([&] { parse_maps(bytes.substr(0, bytes.size() - 9)); }) == ErrorCode::kTruncatedFile);
    CHECK(code_of([&] { parse_maps(bytes.substr(0, 14)); }) == ErrorCode::kTruncatedFile);
    std::string bad = bytes;
    bad[0] = 'X';
    CHECK(code_of([&] { parse_maps(bad); }) == ErrorCode::kBadMagic);
  }
  SUBCASE("heatmap packing") {
    std::vector<HeatmapStack> frames(2, HeatmapStack(3, GridSize{4, 5}));
    frames[1].at(2, 3, 4) = 0.25;
    const auto back = unpack_heatmaps(pack_heatmaps(frames, Dtype::kF32));
    CHECK(back.size() == 2);
    CHECK(back[1].at(2, 3, 4) == 0.25);
    CHECK(back[1].grid == GridSize{4, 5});
  }
}

TEST_CASE("pose and keypoint files") {
  const auto spec = default_h36m_skeleton();
  CounterRng rng(63, 1);
  std::vector<PoseFrame> frames;
  for (int f = 0; f < 4; ++f) frames.push_back({f, posecodec::testing::random_pose(spec, rng)});

  SUBCASE("poses round-trip") {
    const auto back = parse_poses(format_poses(frames), 17);
    REQUIRE(back.size() == 4);
    for (int f = 0; f < 4; ++f) {
      CHECK(back[f].frame == f);
      CHECK(posecodec::testing::max_joint_deviation(back[f].pose, frames[f].pose) < 1e-6);
    }
  }
  SUBCASE("out-of-order frames") {
    std::swap(frames[1], frames[2]);
    CHECK(code_of([&] { parse_poses(format_poses(frames), 17); }) == ErrorCode::kFrameOrder);
  }
  SUBCASE("joint count mismatch") {
    CHECK(code_of([&] { parse_poses(format_poses(frames), 16); }) == ErrorCode::kJointCountMismatch);
  }
  SUBCASE("blank input has no frames") { CHECK(parse_poses("", 17).empty()); }
  SUBCASE("keypoints round-trip") {
    std::vector<KeypointFrame> kf{{0, Keypoints2D{{Vec2(1.25, 2.5), Vec2(3, 4)}, {true, false}}}};
    const auto back = parse_keypoints(format_keypoints(kf), 2);
    CHECK(back[0].keypoints.points_px[0] == Vec2(1.25, 2.5));
    CHECK_FALSE(back[0].keypoints.visible[1]);
  }
}

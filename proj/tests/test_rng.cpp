// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "posecodec/core/rng.hpp"

using namespace posecodec;

TEST_CASE("philox4x32-10 known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  using A2 = std::array<std::uint32_t, 2>;
  CHECK(philox4x32(A4{0, 0, 0, 0}, A2{0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32(A4{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, A2{0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32(A4{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, A2{0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("counter rng streams") {
  CounterRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  bool differ_c = false, differ_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u32();
    CHECK(x == b.next_u32());
    differ_c |= x != c.next_u32();
    differ_d |= x != d.next_u32();
  }
  CHECK(differ_c);
  CHECK(differ_d);
  CHECK(stream_id(StreamTag::kPose, 5) == ((1ull << 48) | 5));
}

TEST_CASE("distributions") {
  CounterRng rng(9, 1);
  const int n = 200000;
  double sum = 0.0, sq = 0.0, umin = 1.0, umax = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    umin = std::min(umin, u);
    umax = std::max(umax, u);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(umin >= 0.0);
  CHECK(umax < 1.0);
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
  for (int i = 0; i < 100; ++i) CHECK(std::abs(rng.unit_vector().norm() - 1.0) < 1e-12);
}

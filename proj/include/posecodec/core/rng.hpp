// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

#include "posecodec/core/skeleton.hpp"

namespace posecodec {

/// Philox4x32-10 block function (Salmon et al., SC'11): maps a 128-bit
/// counter and a 64-bit key to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Deterministic stream over Philox. The key is the seed; the upper half of
/// the counter selects the stream and the lower half counts blocks, so any
/// (seed, stream) pair can be regenerated independently of the others.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller (one draw per call).
  double normal();
  /// Uniformly distributed unit vector.
  Vec3 unit_vector();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

/// Stream identifiers; combined with a frame or trial index.
enum class StreamTag : std::uint64_t {
  kPose = 1,
  kMapNoise = 2,
  kHeatmapNoise = 3,
  kJitter = 4,
  kTest = 99,
};

inline std::uint64_t stream_id(StreamTag tag, std::uint64_t index) {
  return (static_cast<std::uint64_t>(tag) << 48) ^ index;
}

}  // namespace posecodec

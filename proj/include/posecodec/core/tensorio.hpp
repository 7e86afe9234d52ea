// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "posecodec/core/maps.hpp"

namespace posecodec {

// Map container layout, all integers little-endian:
//   "POSMAP01" | u32 dtype | u32 rank | u32 dims[rank] | payload | u32 crc32(payload)
// Payload is row-major, f32 (dtype 1) or f64 (dtype 2).

enum class Dtype : std::uint32_t { kF32 = 1, kF64 = 2 };

struct MapArray {
  std::vector<std::uint32_t> dims;
  std::vector<double> data;
  Dtype dtype = Dtype::kF32;

  std::size_t element_count() const;
};

std::string serialize_maps(const MapArray& array);
MapArray parse_maps(std::string_view bytes);

void write_maps(const std::filesystem::path& path, const MapArray& array);
MapArray read_maps(const std::filesystem::path& path);

/// Frames of heatmaps as F x N x H x W.
MapArray pack_heatmaps(std::span<const HeatmapStack> frames, Dtype dtype);
/// Accepts rank 4 (F x N x H x W) or rank 3 (a single N x H x W frame).
std::vector<HeatmapStack> unpack_heatmaps(const MapArray& array);

/// Frames of orientation maps as F x K x 3 x H x W.
MapArray pack_orientation_maps(std::span<const OrientationMapStack> frames, Dtype dtype);
/// Accepts rank 5 or a single rank-4 K x 3 x H x W frame. The container
/// does not record the encoding mode, so the caller supplies it.
std::vector<OrientationMapStack> unpack_orientation_maps(const MapArray& array,
                                                         EncodingMode mode);

struct PoseFrame {
  std::int64_t frame = 0;
  Pose3D pose;
};

struct KeypointFrame {
  std::int64_t frame = 0;
  Keypoints2D keypoints;
};

/// Newline-delimited JSON: {"frame": i, "joints_mm": [[x, y, z], ...]}.
std::string format_poses(std::span<const PoseFrame> frames);
void write_poses(const std::filesystem::path& path, std::span<const PoseFrame> frames);
/// `expected_joints` <= 0 disables the joint-count check.
std::vector<PoseFrame> parse_poses(std::string_view text, int expected_joints);
std::vector<PoseFrame> read_poses(const std::filesystem::path& path, int expected_joints);

/// Newline-delimited JSON: {"frame": i, "keypoints_px": [[x, y], ...],
/// "visible": [bool, ...]}. A missing "visible" array means all visible.
std::string format_keypoints(std::span<const KeypointFrame> frames);
void write_keypoints(const std::filesystem::path& path, std::span<const KeypointFrame> frames);
std::vector<KeypointFrame> parse_keypoints(std::string_view text, int expected_joints);
std::vector<KeypointFrame> read_keypoints(const std::filesystem::path& path, int expected_joints);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace posecodec

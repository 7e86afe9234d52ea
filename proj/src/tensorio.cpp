// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include "posecodec/core/tensorio.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "posecodec/core/error.hpp"

namespace posecodec {

namespace {

constexpr std::string_view kMagic = "POSMAP01";

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(std::string_view bytes, std::size_t offset, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[offset + i])) << (8 * i);
  return v;
}

std::uint32_t crc_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large payloads in chunks.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    const std::size_t len = std::min(kChunk, bytes.size() - off);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + off), static_cast<uInt>(len));
  }
  return static_cast<std::uint32_t>(crc);
}

std::size_t element_size(Dtype dtype) { return dtype == Dtype::kF32 ? 4 : 8; }

nlohmann::json parse_record(std::string_view line, std::size_t line_no) {
  try {
    return nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, "line " + std::to_string(line_no) + ": " + e.what());
  }
}

// Calls `fn(record, line_no)` for every non-blank line.
template <typename Fn>
void for_each_record(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    fn(parse_record(line, line_no), line_no);
  }
}

void check_frame_order(std::int64_t frame, std::int64_t& last, bool& first, std::size_t line_no) {
  if (!first && frame <= last)
    throw Error(ErrorCode::kFrameOrder, "line " + std::to_string(line_no) + ": frame " +
                                            std::to_string(frame) + " does not follow " +
                                            std::to_string(last));
  first = false;
  last = frame;
}

void check_joint_count(std::size_t got, int expected, std::size_t line_no) {
  if (expected > 0 && got != static_cast<std::size_t>(expected))
    throw Error(ErrorCode::kJointCountMismatch, "line " + std::to_string(line_no) + ": " +
                                                    std::to_string(got) + " joints, skeleton has " +
                                                    std::to_string(expected));
}

}  // namespace

std::size_t MapArray::element_count() const {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return dims.empty() ? 0 : n;
}

std::string serialize_maps(const MapArray& array) {
  if (array.dims.empty()) throw Error(ErrorCode::kInvalidArgument, "map array has no dims");
  for (auto d : array.dims)
    if (d == 0) throw Error(ErrorCode::kInvalidArgument, "map dims must be nonzero");
  if (array.element_count() != array.data.size())
    throw Error(ErrorCode::kShapeMismatch, "map data size does not match dims");

  std::string out(kMagic);
  put_u32(out, static_cast<std::uint32_t>(array.dtype));
  put_u32(out, static_cast<std::uint32_t>(array.dims.size()));
  for (auto d : array.dims) put_u32(out, d);
  const std::size_t payload_start = out.size();
  out.reserve(payload_start + array.data.size() * element_size(array.dtype) + 4);
  if (array.dtype == Dtype::kF32) {
    for (double v : array.data) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  } else {
    for (double v : array.data) put_u64(out, std::bit_cast<std::uint64_t>(v));
  }
  put_u32(out, crc_of(std::string_view(out).substr(payload_start)));
  return out;
}

MapArray parse_maps(std::string_view bytes) {
  if (bytes.size() < kMagic.size() || bytes.substr(0, kMagic.size()) != kMagic)
    throw Error(ErrorCode::kBadMagic, "not a POSMAP01 container");
  std::size_t off = kMagic.size();
  if (bytes.size() < off + 8) throw Error(ErrorCode::kTruncatedFile, "header cut short");
  const auto dtype_code = static_cast<std::uint32_t>(get_le(bytes, off, 4));
  const auto rank = static_cast<std::uint32_t>(get_le(bytes, off + 4, 4));
  off += 8;
  if (dtype_code != 1 && dtype_code != 2)
    throw Error(ErrorCode::kFormat, "unknown dtype code " + std::to_string(dtype_code));
  if (rank == 0 || rank > 16) throw Error(ErrorCode::kFormat, "unsupported rank");
  if (bytes.size() < off + 4ull * rank) throw Error(ErrorCode::kTruncatedFile, "dims cut short");

  MapArray out;
  out.dtype = static_cast<Dtype>(dtype_code);
  for (std::uint32_t i = 0; i < rank; ++i, off += 4) {
    out.dims.push_back(static_cast<std::uint32_t>(get_le(bytes, off, 4)));
    if (out.dims.back() == 0) throw Error(ErrorCode::kFormat, "zero dimension");
  }
  const std::size_t count = out.element_count();
  const std::size_t esize = element_size(out.dtype);
  if (count > (bytes.size() - off) / esize || bytes.size() - off != count * esize + 4)
    throw Error(ErrorCode::kTruncatedFile,
                "file size does not match dims (expected " + std::to_string(off + count * esize + 4) +
                    " bytes, got " + std::to_string(bytes.size()) + ")");

  const std::string_view payload = bytes.substr(off, count * esize);
  const auto stored_crc = static_cast<std::uint32_t>(get_le(bytes, off + payload.size(), 4));
  if (crc_of(payload) != stored_crc) throw Error(ErrorCode::kCrcMismatch, "payload checksum differs");

  out.data.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (out.dtype == Dtype::kF32)
      out.data[i] = std::bit_cast<float>(static_cast<std::uint32_t>(get_le(payload, i * 4, 4)));
    else
      out.data[i] = std::bit_cast<double>(get_le(payload, i * 8, 8));
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

void write_maps(const std::filesystem::path& path, const MapArray& array) {
  write_text_file(path, serialize_maps(array));
}

MapArray read_maps(const std::filesystem::path& path) { return parse_maps(read_text_file(path)); }

MapArray pack_heatmaps(std::span<const HeatmapStack> frames, Dtype dtype) {
  if (frames.empty()) throw Error(ErrorCode::kEmptyInput, "no heatmap frames");
  const auto& first = frames.front();
  MapArray out;
  out.dtype = dtype;
  out.dims = {static_cast<std::uint32_t>(frames.size()), static_cast<std::uint32_t>(first.num_maps),
              static_cast<std::uint32_t>(first.grid.height),
              static_cast<std::uint32_t>(first.grid.width)};
  out.data.reserve(frames.size() * first.data.size());
  for (const auto& f : frames) {
    if (f.num_maps != first.num_maps || !(f.grid == first.grid))
      throw Error(ErrorCode::kShapeMismatch, "heatmap frames differ in shape");
    out.data.insert(out.data.end(), f.data.begin(), f.data.end());
  }
  return out;
}

std::vector<HeatmapStack> unpack_heatmaps(const MapArray& array) {
  std::vector<std::uint32_t> d = array.dims;
  if (d.size() == 3) d.insert(d.begin(), 1);
  if (d.size() != 4) throw Error(ErrorCode::kShapeMismatch, "heatmaps need rank 3 or 4");
  std::vector<HeatmapStack> out;
  const GridSize g{static_cast<int>(d[2]), static_cast<int>(d[3])};
  std::size_t off = 0;
  for (std::uint32_t f = 0; f < d[0]; ++f) {
    HeatmapStack h(static_cast<int>(d[1]), g);
    std::copy_n(array.data.begin() + off, h.data.size(), h.data.begin());
    off += h.data.size();
    out.push_back(std::move(h));
  }
  return out;
}

MapArray pack_orientation_maps(std::span<const OrientationMapStack> frames, Dtype dtype) {
  if (frames.empty()) throw Error(ErrorCode::kEmptyInput, "no orientation frames");
  const auto& first = frames.front();
  MapArray out;
  out.dtype = dtype;
  out.dims = {static_cast<std::uint32_t>(frames.size()), static_cast<std::uint32_t>(first.num_limbs), 3,
              static_cast<std::uint32_t>(first.grid.height),
              static_cast<std::uint32_t>(first.grid.width)};
  out.data.reserve(frames.size() * first.data.size());
  for (const auto& f : frames) {
    if (f.num_limbs != first.num_limbs || !(f.grid == first.grid))
      throw Error(ErrorCode::kShapeMismatch, "orientation frames differ in shape");
    out.data.insert(out.data.end(), f.data.begin(), f.data.end());
  }
  return out;
}

std::vector<OrientationMapStack> unpack_orientation_maps(const MapArray& array,
                                                         EncodingMode mode) {
  std::vector<std::uint32_t> d = array.dims;
  if (d.size() == 4) d.insert(d.begin(), 1);
  if (d.size() != 5 || d[2] != 3)
    throw Error(ErrorCode::kShapeMismatch, "orientation maps need shape [F x] K x 3 x H x W");
  std::vector<OrientationMapStack> out;
  const GridSize g{static_cast<int>(d[3]), static_cast<int>(d[4])};
  std::size_t off = 0;
  for (std::uint32_t f = 0; f < d[0]; ++f) {
    OrientationMapStack o(static_cast<int>(d[1]), g, mode);
    std::copy_n(array.data.begin() + off, o.data.size(), o.data.begin());
    off += o.data.size();
    out.push_back(std::move(o));
  }
  return out;
}

std::string format_poses(std::span<const PoseFrame> frames) {
  std::string out;
  for (const auto& f : frames) {
    nlohmann::json rec;
    rec["frame"] = f.frame;
    auto joints = nlohmann::json::array();
    for (const auto& p : f.pose.joints_mm) joints.push_back({p.x(), p.y(), p.z()});
    rec["joints_mm"] = std::move(joints);
    out += rec.dump();
    out += '\n';
  }
  return out;
}

void write_poses(const std::filesystem::path& path, std::span<const PoseFrame> frames) {
  write_text_file(path, format_poses(frames));
}

std::vector<PoseFrame> parse_poses(std::string_view text, int expected_joints) {
  std::vector<PoseFrame> out;
  std::int64_t last = 0;
  bool first = true;
  for_each_record(text, [&](const nlohmann::json& rec, std::size_t line_no) {
    try {
      PoseFrame f;
      f.frame = rec.at("frame").get<std::int64_t>();
      check_frame_order(f.frame, last, first, line_no);
      const auto& joints = rec.at("joints_mm");
      check_joint_count(joints.size(), expected_joints, line_no);
      for (const auto& p : joints) {
        if (!p.is_array() || p.size() != 3)
          throw Error(ErrorCode::kFormat, "line " + std::to_string(line_no) + ": joint needs 3 coordinates");
        f.pose.joints_mm.emplace_back(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
      }
      out.push_back(std::move(f));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kFormat, "line " + std::to_string(line_no) + ": " + e.what());
    }
  });
  return out;
}

std::vector<PoseFrame> read_poses(const std::filesystem::path& path, int expected_joints) {
  return parse_poses(read_text_file(path), expected_joints);
}

std::string format_keypoints(std::span<const KeypointFrame> frames) {
  std::string out;
  for (const auto& f : frames) {
    nlohmann::json rec;
    rec["frame"] = f.frame;
    auto pts = nlohmann::json::array();
    for (const auto& p : f.keypoints.points_px) pts.push_back({p.x(), p.y()});
    rec["keypoints_px"] = std::move(pts);
    rec["visible"] = f.keypoints.visible;
    out += rec.dump();
    out += '\n';
  }
  return out;
}

void write_keypoints(const std::filesystem::path& path, std::span<const KeypointFrame> frames) {
  write_text_file(path, format_keypoints(frames));
}

std::vector<KeypointFrame> parse_keypoints(std::string_view text, int expected_joints) {
  std::vector<KeypointFrame> out;
  std::int64_t last = 0;
  bool first = true;
  for_each_record(text, [&](const nlohmann::json& rec, std::size_t line_no) {
    try {
      KeypointFrame f;
      f.frame = rec.at("frame").get<std::int64_t>();
      check_frame_order(f.frame, last, first, line_no);
      const auto& pts = rec.at("keypoints_px");
      check_joint_count(pts.size(), expected_joints, line_no);
      for (const auto& p : pts) {
        if (!p.is_array() || p.size() != 2)
          throw Error(ErrorCode::kFormat, "line " + std::to_string(line_no) + ": keypoint needs 2 coordinates");
        f.keypoints.points_px.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
      if (rec.contains("visible")) {
        f.keypoints.visible = rec["visible"].get<std::vector<bool>>();
        if (f.keypoints.visible.size() != f.keypoints.points_px.size())
          throw Error(ErrorCode::kFormat, "line " + std::to_string(line_no) + ": visible length differs");
      } else {
        f.keypoints.visible.assign(f.keypoints.points_px.size(), true);
      }
      out.push_back(std::move(f));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kFormat, "line " + std::to_string(line_no) + ": " + e.what());
    }
  });
  return out;
}

std::vector<KeypointFrame> read_keypoints(const std::filesystem::path& path, int expected_joints) {
  return parse_keypoints(read_text_file(path), expected_joints);
}

}  // namespace posecodec

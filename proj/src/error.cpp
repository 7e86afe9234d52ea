// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#include "posecodec/core/error.hpp"

namespace posecodec {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidSkeleton: return "InvalidSkeleton";
    case ErrorCode::kZeroLengthLimb: return "ZeroLengthLimb";
    case ErrorCode::kNonUnitOrientation: return "NonUnitOrientation";
    case ErrorCode::kBehindCamera: return "BehindCamera";
    case ErrorCode::kDegenerateOrientation: return "DegenerateOrientation";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kJointCountMismatch: return "JointCountMismatch";
    case ErrorCode::kDegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kCrcMismatch: return "CrcMismatch";
    case ErrorCode::kTruncatedFile: return "TruncatedFile";
    case ErrorCode::kFrameOrder: return "FrameOrderError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kInvariantFailed: return "InvariantFailed";
  }
  return "Unknown";
}

}  // namespace posecodec

// Copyright (C) 2026 The posecodec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace posecodec {

/// Failure categories shared by the C++ core and the C API. Numeric values
/// are stable: they are returned verbatim through the C API.
enum class ErrorCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kInvalidSkeleton = 2,
  kZeroLengthLimb = 3,
  kNonUnitOrientation = 4,
  kBehindCamera = 5,
  kDegenerateOrientation = 6,
  kShapeMismatch = 7,
  kJointCountMismatch = 8,
  kDegenerateConfiguration = 9,
  kEmptyInput = 10,
  kBadMagic = 11,
  kCrcMismatch = 12,
  kTruncatedFile = 13,
  kFrameOrder = 14,
  kIo = 15,
  kFormat = 16,
  kInvariantFailed = 17,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown when a limb cannot be decoded; carries the offending limb index.
class LimbError : public Error {
 public:
  LimbError(ErrorCode code, int limb, const std::string& what)
      : Error(code, "limb " + std::to_string(limb) + ": " + what),
        limb_(limb) {}

  int limb() const noexcept { return limb_; }

 private:
  int limb_;
};

}  // namespace posecodec

// Copyright 2026 The bangbang Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bangbang {

enum class ErrorCode {
  NotUnitary,
  ShapeMismatch,
  DimensionTooSmall,
  DimMismatch,
  NotUnit,
  BadIndex,
  WrongFamily,
  NonpositiveAmplitude,
  NonpositiveLambda,
  NonCommutingStep,
  InvalidSchedule,
  DeflationFailure,
  ParseError,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::WrongFamily: return "WrongFamily";
    case ErrorCode::NonpositiveAmplitude: return "NonpositiveAmplitude";
    case ErrorCode::NonpositiveLambda: return "NonpositiveLambda";
    case ErrorCode::NonCommutingStep: return "NonCommutingStep";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::DeflationFailure: return "DeflationFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Exception type thrown by every bangbang operation. The code identifies
/// the failed precondition so callers can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bangbang

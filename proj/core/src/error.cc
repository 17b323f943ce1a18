// Copyright 2026 The pipemap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pipemap/error.h"

namespace pipemap {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidApp:
      return "InvalidApp";
    case ErrorCode::kInvalidPlatform:
      return "InvalidPlatform";
    case ErrorCode::kEmptyMapping:
      return "EmptyMapping";
    case ErrorCode::kNonContiguousIntervals:
      return "NonContiguousIntervals";
    case ErrorCode::kDuplicateProcessor:
      return "DuplicateProcessor";
    case ErrorCode::kIndexOutOfRange:
      return "IndexOutOfRange";
    case ErrorCode::kTooManyIntervals:
      return "TooManyIntervals";
    case ErrorCode::kNoSplitPossible:
      return "NoSplitPossible";
    case ErrorCode::kInfeasible:
      return "Infeasible";
    case ErrorCode::kInstanceTooLarge:
      return "InstanceTooLarge";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kNeverFails:
      return "NeverFails";
    case ErrorCode::kAlwaysFails:
      return "AlwaysFails";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

InfeasibleError::InfeasibleError(double best_value, const std::string& message)
    : Error(ErrorCode::kInfeasible, message), best_value_(best_value) {}

}  // namespace pipemap

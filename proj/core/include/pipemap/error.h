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

#ifndef PIPEMAP_ERROR_H_
#define PIPEMAP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pipemap {

enum class ErrorCode {
  kInvalidApp,
  kInvalidPlatform,
  kEmptyMapping,
  kNonContiguousIntervals,
  kDuplicateProcessor,
  kIndexOutOfRange,
  kTooManyIntervals,
  kNoSplitPossible,
  kInfeasible,
  kInstanceTooLarge,
  kParseError,
  kNeverFails,
  kAlwaysFails,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as pipemap::Error. code() identifies the
// violated contract; what() carries a human readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a heuristic or oracle cannot meet its threshold. best_value() is
// the best value of the constrained criterion that was reached (for a
// period-bounded search, the lowest period; for latency-bounded heuristics,
// the optimal latency).
class InfeasibleError : public Error {
 public:
  InfeasibleError(double best_value, const std::string& message);

  double best_value() const { return best_value_; }

 private:
  double best_value_;
};

}  // namespace pipemap

#endif  // PIPEMAP_ERROR_H_

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

#include "pipemap/model.h"

#include <cmath>
#include <string>
#include <vector>

#include "pipemap/error.h"

namespace pipemap {
namespace {

bool FinitePositive(double v) { return std::isfinite(v) && v > 0.0; }

void CheckIndices(const PipelineApp& app, const Platform& platform,
                  Interval interval, int proc) {
  if (interval.first < 1 || interval.last > app.stages() ||
      interval.first > interval.last) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "interval [" + std::to_string(interval.first) + "," +
                    std::to_string(interval.last) + "] outside [1," +
                    std::to_string(app.stages()) + "]");
  }
  if (proc < 1 || proc > platform.processors()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "processor " + std::to_string(proc) + " outside [1," +
                    std::to_string(platform.processors()) + "]");
  }
}

}  // namespace

void ValidateApp(const PipelineApp& app) {
  if (app.work.empty()) {
    throw Error(ErrorCode::kInvalidApp, "pipeline has no stages");
  }
  if (app.delta.size() != app.work.size() + 1) {
    throw Error(ErrorCode::kInvalidApp,
                "expected " + std::to_string(app.work.size() + 1) +
                    " data sizes, got " + std::to_string(app.delta.size()));
  }
  for (size_t k = 0; k < app.work.size(); ++k) {
    if (!FinitePositive(app.work[k])) {
      throw Error(ErrorCode::kInvalidApp,
                  "work of stage " + std::to_string(k + 1) +
                      " must be finite and positive");
    }
  }
  for (size_t k = 0; k < app.delta.size(); ++k) {
    if (!std::isfinite(app.delta[k]) || app.delta[k] < 0.0) {
      throw Error(ErrorCode::kInvalidApp,
                  "data size delta_" + std::to_string(k) +
                      " must be finite and non-negative");
    }
  }
}

void ValidatePlatform(const Platform& platform) {
  if (platform.speeds.empty()) {
    throw Error(ErrorCode::kInvalidPlatform, "platform has no processors");
  }
  for (size_t u = 0; u < platform.speeds.size(); ++u) {
    if (!FinitePositive(platform.speeds[u])) {
      throw Error(ErrorCode::kInvalidPlatform,
                  "speed of processor " + std::to_string(u + 1) +
                      " must be finite and positive");
    }
  }
  if (!FinitePositive(platform.bandwidth)) {
    throw Error(ErrorCode::kInvalidPlatform,
                "bandwidth must be finite and positive");
  }
}

void Validate(const PipelineApp& app, const Platform& platform,
              const IntervalMapping& mapping) {
  ValidateApp(app);
  ValidatePlatform(platform);
  const int m = mapping.size();
  if (m == 0) throw Error(ErrorCode::kEmptyMapping, "mapping has no interval");
  if (mapping.alloc.size() != mapping.intervals.size()) {
    throw Error(ErrorCode::kEmptyMapping,
                "mapping has " + std::to_string(m) + " intervals but " +
                    std::to_string(mapping.alloc.size()) + " processors");
  }
  if (m > platform.processors()) {
    throw Error(ErrorCode::kTooManyIntervals,
                std::to_string(m) + " intervals on " +
                    std::to_string(platform.processors()) + " processors");
  }
  int expected_first = 1;
  for (int j = 0; j < m; ++j) {
    const Interval& iv = mapping.intervals[j];
    if (iv.first < 1 || iv.last > app.stages()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "interval " + std::to_string(j + 1) + " = [" +
                      std::to_string(iv.first) + "," +
                      std::to_string(iv.last) + "] is not within [1," +
                      std::to_string(app.stages()) + "]");
    }
    if (iv.first != expected_first || iv.first > iv.last) {
      throw Error(ErrorCode::kNonContiguousIntervals,
                  "interval " + std::to_string(j + 1) + " = [" +
                      std::to_string(iv.first) + "," +
                      std::to_string(iv.last) + "], expected it to start at " +
                      std::to_string(expected_first));
    }
    expected_first = iv.last + 1;
  }
  if (expected_first != app.stages() + 1) {
    throw Error(ErrorCode::kNonContiguousIntervals,
                "intervals stop at stage " + std::to_string(expected_first - 1) +
                    " of " + std::to_string(app.stages()));
  }
  std::vector<bool> seen(platform.speeds.size(), false);
  for (int j = 0; j < m; ++j) {
    const int u = mapping.alloc[j];
    if (u < 1 || u > platform.processors()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "processor " + std::to_string(u) + " of interval " +
                      std::to_string(j + 1) + " outside [1," +
                      std::to_string(platform.processors()) + "]");
    }
    if (seen[u - 1]) {
      throw Error(ErrorCode::kDuplicateProcessor,
                  "processor " + std::to_string(u) + " runs two intervals");
    }
    seen[u - 1] = true;
  }
}

double IntervalWork(const PipelineApp& app, Interval interval) {
  double sum = 0.0;
  for (int i = interval.first; i <= interval.last; ++i) sum += app.work[i - 1];
  return sum;
}

double IntervalLatencyTerm(const PipelineApp& app, const Platform& platform,
                           Interval interval, int proc) {
  CheckIndices(app, platform, interval, proc);
  const double b = platform.bandwidth;
  return app.delta[interval.first - 1] / b +
         IntervalWork(app, interval) / platform.speeds[proc - 1];
}

double IntervalCycleTime(const PipelineApp& app, const Platform& platform,
                         Interval interval, int proc) {
  return IntervalLatencyTerm(app, platform, interval, proc) +
         app.delta[interval.last] / platform.bandwidth;
}

CostReport Evaluate(const PipelineApp& app, const Platform& platform,
                    const IntervalMapping& mapping) {
  Validate(app, platform, mapping);
  return EvaluateUnchecked(app, platform, mapping);
}

CostReport EvaluateUnchecked(const PipelineApp& app, const Platform& platform,
                             const IntervalMapping& mapping) {
  CostReport report;
  double latency = 0.0;
  for (int j = 0; j < mapping.size(); ++j) {
    const Interval iv = mapping.intervals[j];
    const double term =
        IntervalLatencyTerm(app, platform, iv, mapping.alloc[j]);
    const double cycle = term + app.delta[iv.last] / platform.bandwidth;
    if (j == 0 || cycle > report.period) {
      report.period = cycle;
      report.bottleneck = j + 1;
    }
    latency += term;
  }
  report.latency = latency + app.delta.back() / platform.bandwidth;
  return report;
}

int FastestProcessor(const Platform& platform) {
  int best = 1;
  for (int u = 2; u <= platform.processors(); ++u) {
    if (platform.speeds[u - 1] > platform.speeds[best - 1]) best = u;
  }
  return best;
}

IntervalMapping SingleIntervalMapping(int stages, int proc) {
  return IntervalMapping{{Interval{1, stages}}, {proc}};
}

}  // namespace pipemap

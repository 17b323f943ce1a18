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

#ifndef PIPEMAP_MODEL_H_
#define PIPEMAP_MODEL_H_

#include <vector>

namespace pipemap {

// A linear pipeline of n stages. Stage k (1-based) reads delta[k-1] data
// units, performs work[k-1] flops and writes delta[k] data units. delta[0] is
// read from and delta[n] written to the outside world.
struct PipelineApp {
  std::vector<double> work;
  std::vector<double> delta;

  int stages() const { return static_cast<int>(work.size()); }
  friend bool operator==(const PipelineApp&, const PipelineApp&) = default;
};

// Processors of different speeds connected by links of a single bandwidth.
struct Platform {
  std::vector<double> speeds;
  double bandwidth = 1.0;

  int processors() const { return static_cast<int>(speeds.size()); }
  friend bool operator==(const Platform&, const Platform&) = default;
};

// Closed range of 1-based stage indices [first, last].
struct Interval {
  int first = 1;
  int last = 1;

  int length() const { return last - first + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

// intervals[j] runs on processor alloc[j]; processor indices are 1-based.
struct IntervalMapping {
  std::vector<Interval> intervals;
  std::vector<int> alloc;

  int size() const { return static_cast<int>(intervals.size()); }
  friend bool operator==(const IntervalMapping&,
                         const IntervalMapping&) = default;
};

struct CostReport {
  double period = 0.0;
  double latency = 0.0;
  // 1-based index of the first interval whose cycle time equals the period.
  int bottleneck = 1;
};

// Relative slack applied when checking "value <= bound" constraints.
inline constexpr double kConstraintRelTol = 1e-12;

inline bool WithinBound(double value, double bound) {
  return value <= bound * (1.0 + kConstraintRelTol);
}

// Throw pipemap::Error naming the first violated invariant.
void ValidateApp(const PipelineApp& app);
void ValidatePlatform(const Platform& platform);
void Validate(const PipelineApp& app, const Platform& platform,
              const IntervalMapping& mapping);

// Sum of work over the interval, accumulated left to right.
double IntervalWork(const PipelineApp& app, Interval interval);

// delta[d-1]/b + work(d..e)/s. One summand of the latency.
double IntervalLatencyTerm(const PipelineApp& app, const Platform& platform,
                           Interval interval, int proc);

// delta[d-1]/b + work(d..e)/s + delta[e]/b. Checks the interval and processor
// indices (IndexOutOfRange) but not the app or platform.
double IntervalCycleTime(const PipelineApp& app, const Platform& platform,
                         Interval interval, int proc);

// Period and latency of a mapping. Validates first.
CostReport Evaluate(const PipelineApp& app, const Platform& platform,
                    const IntervalMapping& mapping);

// Same as Evaluate without validation; callers guarantee a valid mapping.
CostReport EvaluateUnchecked(const PipelineApp& app, const Platform& platform,
                             const IntervalMapping& mapping);

// Fastest processor, ties broken by the lowest index.
int FastestProcessor(const Platform& platform);

// All stages on one processor.
IntervalMapping SingleIntervalMapping(int stages, int proc);

}  // namespace pipemap

#endif  // PIPEMAP_MODEL_H_

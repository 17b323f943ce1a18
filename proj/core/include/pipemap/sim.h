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

#ifndef PIPEMAP_SIM_H_
#define PIPEMAP_SIM_H_

#include <vector>

#include "pipemap/model.h"

namespace pipemap {

struct SimReport {
  // Mean gap between consecutive completions over the last m data sets.
  double measured_period = 0.0;
  // Completion time of the first data set (all processors start idle at 0).
  double measured_latency = 0.0;
  int trace_length = 0;  // events processed
  // completion_times[k] is when data set k+1 left the last processor.
  std::vector<double> completion_times;
};

// Event-driven execution of `num_datasets` data sets through the mapping.
// Each interval processor loops: receive, compute, send. Transfers are
// rendezvous under the one-port model: a transfer of delta/b time units
// starts when the sender has the data ready and the receiver is waiting, and
// occupies both ends for its whole duration. The outside world provides data
// set k+1 as soon as data set k has been handed over and always accepts
// results.
//
// Requires num_datasets >= 2m + 2; throws Error(kInvalidArgument) otherwise
// and propagates Validate errors for a malformed mapping.
SimReport Simulate(const PipelineApp& app, const Platform& platform,
                   const IntervalMapping& mapping, int num_datasets);

}  // namespace pipemap

#endif  // PIPEMAP_SIM_H_

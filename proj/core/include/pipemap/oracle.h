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

#ifndef PIPEMAP_ORACLE_H_
#define PIPEMAP_ORACLE_H_

#include <optional>
#include <vector>

#include "pipemap/model.h"

namespace pipemap {

// Exhaustive enumeration is refused above these sizes unless `force` is set.
struct OracleOptions {
  int max_stages = 12;
  int max_processors = 8;
  bool force = false;
  // When positive, only mappings with exactly this many intervals count.
  int exact_intervals = 0;
};

struct MappingValue {
  double value = 0.0;
  IntervalMapping mapping;
};

struct ParetoPoint {
  double period = 0.0;
  double latency = 0.0;
  IntervalMapping witness;
};

// Non-dominated (period, latency) pairs, strictly increasing in period and
// strictly decreasing in latency. Among mappings with identical costs the
// first enumerated one is the witness.
struct ParetoFront {
  std::vector<ParetoPoint> points;
};

// Whole pipeline on the fastest processor: delta_0/b + sum(w)/s_max +
// delta_n/b.
MappingValue OptimalLatency(const PipelineApp& app, const Platform& platform);

// Enumerates every interval mapping: interval counts ascending, cut positions
// in lexicographic order, injective processor assignments in lexicographic
// order. The first mapping reaching the optimum is the witness. Throws
// Error(kInstanceTooLarge) past the size guard.
MappingValue BruteForceMinPeriod(const PipelineApp& app,
                                 const Platform& platform,
                                 const OracleOptions& options = {});

// Minimum latency over every mapping, by the same enumeration.
MappingValue BruteForceMinLatency(const PipelineApp& app,
                                  const Platform& platform,
                                  const OracleOptions& options = {});

ParetoFront ComputeParetoFront(const PipelineApp& app, const Platform& platform,
                               const OracleOptions& options = {});

// Threshold queries on a front. Throw InfeasibleError (carrying the front's
// extreme value for the bounded criterion) when no point qualifies.
MappingValue MinLatencyGivenPeriod(const ParetoFront& front,
                                   double period_bound);
MappingValue MinPeriodGivenLatency(const ParetoFront& front,
                                   double latency_bound);
MappingValue MinLatencyGivenPeriod(const PipelineApp& app,
                                   const Platform& platform,
                                   double period_bound,
                                   const OracleOptions& options = {});
MappingValue MinPeriodGivenLatency(const PipelineApp& app,
                                   const Platform& platform,
                                   double latency_bound,
                                   const OracleOptions& options = {});

// Heterogeneous chains-to-chains decision: split a[0..n) into exactly p
// non-empty consecutive intervals and match them one-to-one with the values
// s so that every load / matched value is <= bound.
struct Hetero1DInstance {
  std::vector<double> a;
  std::vector<double> s;
  double bound = 1.0;
};

struct Hetero1DWitness {
  std::vector<Interval> parts;  // 1-based element ranges
  std::vector<int> sigma;       // sigma[k] is the 1-based value index of part k
  double max_ratio = 0.0;
};

struct Hetero1DDecision {
  bool feasible = false;
  std::optional<Hetero1DWitness> witness;
};

struct Hetero1DOptions {
  int max_elements = 32;
  int max_values = 12;
  bool force = false;
};

// Enumerates partitions by cut position with the load/value matching decided
// per partition by pairing sorted loads with sorted values. Exact; the first
// feasible partition in lexicographic cut order is the witness.
Hetero1DDecision DecideHetero1DPartition(const Hetero1DInstance& instance,
                                         const Hetero1DOptions& options = {});

}  // namespace pipemap

#endif  // PIPEMAP_ORACLE_H_

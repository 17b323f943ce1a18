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

#ifndef PIPEMAP_HEURISTICS_H_
#define PIPEMAP_HEURISTICS_H_

#include <deque>
#include <span>
#include <string_view>
#include <vector>

#include "pipemap/model.h"

namespace pipemap {

// The six splitting heuristics. H1-H3 minimize latency under a period bound,
// H4-H5 minimize period under a latency bound.
enum class HeuristicId {
  kSpMonoP,      // h1
  kExplo3Mono,   // h2a
  kExplo3Bi,     // h2b
  kSpBiP,        // h3
  kSpMonoL,      // h4
  kSpBiL,        // h5
};

enum class TargetKind { kFixedPeriod, kFixedLatency };

struct BicriteriaTarget {
  TargetKind kind = TargetKind::kFixedPeriod;
  double value = 0.0;
};

std::span<const HeuristicId> AllHeuristics();
// Short external name: h1, h2a, h2b, h3, h4, h5.
std::string_view HeuristicName(HeuristicId id);
// Long alias: sp-mono-p, 3explo-mono, 3explo-bi, sp-bi-p, sp-mono-l, sp-bi-l.
std::string_view HeuristicAlias(HeuristicId id);
// Accepts either form. Throws Error(kInvalidArgument).
HeuristicId ParseHeuristic(std::string_view name);
TargetKind HeuristicTargetKind(HeuristicId id);
std::string_view TargetKindName(TargetKind kind);

// Splitting state. `used` lists processors in the order they were enrolled,
// `unused` holds the rest by non-increasing speed (ties by lower index).
struct HeuristicState {
  IntervalMapping mapping;
  std::vector<int> used;
  std::deque<int> unused;
};

// One way of splitting interval `target_interval` among its processor and
// one or two fresh ones.
struct SplitCandidate {
  int target_interval = 1;  // 1-based
  std::vector<int> cuts;    // last stage of every part but the final one
  std::vector<Interval> parts;
  std::vector<int> procs;          // procs[i] runs parts[i]
  std::vector<double> new_cycle;   // cycle time of parts[i] on procs[i]
  double cycle_before = 0.0;       // cycle time of the split interval
  double latency_before = 0.0;
  double latency_after = 0.0;
  // latency_after - latency_before; positive when the split costs latency.
  double delta_latency = 0.0;
  // cycle_before - new_cycle[i].
  std::vector<double> delta_period;

  double MaxNewCycle() const;
  // max_i delta_latency / delta_period[i]; only meaningful when every
  // delta_period[i] > 0.
  double MaxRatio() const;
  bool AllPeriodsImprove() const;
};

HeuristicState InitialState(const PipelineApp& app, const Platform& platform);

// Candidates for splitting interval j (1-based) in two with the next unused
// processor, ordered by cut position, then "first part stays" before "first
// part moves". Throws Error(kNoSplitPossible) for a one-stage interval or an
// empty unused queue.
std::vector<SplitCandidate> Enumerate2Splits(const PipelineApp& app,
                                             const Platform& platform,
                                             const HeuristicState& state,
                                             int j);

// Three-way split with the next two unused processors: every cut pair in
// lexicographic order, then the six role permutations of (incumbent, first
// new, second new) in lexicographic order. Throws Error(kNoSplitPossible)
// when the interval has fewer than 3 stages or fewer than 2 processors are
// unused.
std::vector<SplitCandidate> Enumerate3Splits(const PipelineApp& app,
                                             const Platform& platform,
                                             const HeuristicState& state,
                                             int j);

HeuristicState ApplySplit(const HeuristicState& state,
                          const SplitCandidate& candidate);

// Accepted splits of a run, in order.
struct SplitStep {
  int interval = 1;
  double cycle_before = 0.0;
  double max_cycle_after = 0.0;
  CostReport before;
  CostReport after;
};

struct HeuristicTrace {
  std::vector<SplitStep> steps;
  // Number of splitting runs performed (1 except for h3).
  int trials = 0;
};

// Period-bounded heuristics. Throw InfeasibleError carrying the lowest period
// reached when the bound cannot be met.
IntervalMapping SpMonoP(const PipelineApp& app, const Platform& platform,
                        double period_bound, HeuristicTrace* trace = nullptr);
IntervalMapping Explo3Mono(const PipelineApp& app, const Platform& platform,
                           double period_bound,
                           HeuristicTrace* trace = nullptr);
IntervalMapping Explo3Bi(const PipelineApp& app, const Platform& platform,
                         double period_bound, HeuristicTrace* trace = nullptr);
IntervalMapping SpBiP(const PipelineApp& app, const Platform& platform,
                      double period_bound, HeuristicTrace* trace = nullptr);

// Latency-bounded heuristics. Throw InfeasibleError carrying the optimal
// latency when the bound is below it; otherwise always return a mapping.
IntervalMapping SpMonoL(const PipelineApp& app, const Platform& platform,
                        double latency_bound, HeuristicTrace* trace = nullptr);
IntervalMapping SpBiL(const PipelineApp& app, const Platform& platform,
                      double latency_bound, HeuristicTrace* trace = nullptr);

// Dispatches on `id`. Throws Error(kInvalidArgument) when the target kind does
// not match the heuristic, or a non-positive target.
IntervalMapping RunHeuristic(HeuristicId id, const PipelineApp& app,
                             const Platform& platform, BicriteriaTarget target,
                             HeuristicTrace* trace = nullptr);

}  // namespace pipemap

#endif  // PIPEMAP_HEURISTICS_H_

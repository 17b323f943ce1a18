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

#include "pipemap/heuristics.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>

#include "pipemap/error.h"

namespace pipemap {
namespace {

constexpr std::array<HeuristicId, 6> kAllHeuristics = {
    HeuristicId::kSpMonoP,  HeuristicId::kExplo3Mono, HeuristicId::kExplo3Bi,
    HeuristicId::kSpBiP,    HeuristicId::kSpMonoL,    HeuristicId::kSpBiL,
};

// Search range and resolution for the latency slack of h3.
constexpr double kSlackStart = 0.25;
constexpr double kSlackCap = 65536.0;  // 2^16
constexpr int kSlackBisections = 30;

std::vector<int> ProcessorsBySpeed(const Platform& platform) {
  std::vector<int> order(platform.processors());
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return platform.speeds[a - 1] > platform.speeds[b - 1];
  });
  return order;
}

std::vector<Interval> PartsFromCuts(Interval iv, const std::vector<int>& cuts) {
  std::vector<Interval> parts;
  int first = iv.first;
  for (int c : cuts) {
    parts.push_back({first, c});
    first = c + 1;
  }
  parts.push_back({first, iv.last});
  return parts;
}

IntervalMapping SplitMapping(const IntervalMapping& mapping, int j,
                             const std::vector<Interval>& parts,
                             const std::vector<int>& procs) {
  IntervalMapping out;
  const int m = mapping.size();
  out.intervals.reserve(m + parts.size() - 1);
  out.alloc.reserve(m + parts.size() - 1);
  for (int k = 1; k <= m; ++k) {
    if (k == j) {
      out.intervals.insert(out.intervals.end(), parts.begin(), parts.end());
      out.alloc.insert(out.alloc.end(), procs.begin(), procs.end());
    } else {
      out.intervals.push_back(mapping.intervals[k - 1]);
      out.alloc.push_back(mapping.alloc[k - 1]);
    }
  }
  return out;
}

SplitCandidate MakeCandidate(const PipelineApp& app, const Platform& platform,
                             const HeuristicState& state, int j,
                             std::vector<int> cuts, std::vector<int> procs,
                             double cycle_before, double latency_before) {
  SplitCandidate c;
  c.target_interval = j;
  c.parts = PartsFromCuts(state.mapping.intervals[j - 1], cuts);
  c.cuts = std::move(cuts);
  c.procs = std::move(procs);
  c.cycle_before = cycle_before;
  c.latency_before = latency_before;
  for (size_t i = 0; i < c.parts.size(); ++i) {
    const double cycle =
        IntervalCycleTime(app, platform, c.parts[i], c.procs[i]);
    c.new_cycle.push_back(cycle);
    c.delta_period.push_back(cycle_before - cycle);
  }
  c.latency_after =
      EvaluateUnchecked(app, platform,
                        SplitMapping(state.mapping, j, c.parts, c.procs))
          .latency;
  c.delta_latency = c.latency_after - c.latency_before;
  return c;
}

bool CanSplit(const HeuristicState& state, int j, int ways) {
  if (j < 1 || j > state.mapping.size()) return false;
  return state.mapping.intervals[j - 1].length() >= ways &&
         static_cast<int>(state.unused.size()) >= ways - 1;
}

void CheckInterval(const HeuristicState& state, int j) {
  if (j < 1 || j > state.mapping.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "interval " + std::to_string(j) + " outside [1," +
                    std::to_string(state.mapping.size()) + "]");
  }
}

std::vector<SplitCandidate> Collect2Splits(const PipelineApp& app,
                                           const Platform& platform,
                                           const HeuristicState& state,
                                           int j) {
  const Interval iv = state.mapping.intervals[j - 1];
  const int incumbent = state.mapping.alloc[j - 1];
  const int fresh = state.unused.front();
  const double cycle_before = IntervalCycleTime(app, platform, iv, incumbent);
  const double latency_before =
      EvaluateUnchecked(app, platform, state.mapping).latency;
  std::vector<SplitCandidate> out;
  out.reserve(2 * (iv.length() - 1));
  for (int c = iv.first; c < iv.last; ++c) {
    out.push_back(MakeCandidate(app, platform, state, j, {c},
                                {incumbent, fresh}, cycle_before,
                                latency_before));
    out.push_back(MakeCandidate(app, platform, state, j, {c},
                                {fresh, incumbent}, cycle_before,
                                latency_before));
  }
  return out;
}

std::vector<SplitCandidate> Collect3Splits(const PipelineApp& app,
                                           const Platform& platform,
                                           const HeuristicState& state,
                                           int j) {
  const Interval iv = state.mapping.intervals[j - 1];
  const std::array<int, 3> roles = {state.mapping.alloc[j - 1],
                                    state.unused[0], state.unused[1]};
  const double cycle_before = IntervalCycleTime(app, platform, iv, roles[0]);
  const double latency_before =
      EvaluateUnchecked(app, platform, state.mapping).latency;
  std::vector<SplitCandidate> out;
  for (int c1 = iv.first; c1 < iv.last - 1; ++c1) {
    for (int c2 = c1 + 1; c2 < iv.last; ++c2) {
      std::array<int, 3> perm = {0, 1, 2};
      do {
        out.push_back(MakeCandidate(
            app, platform, state, j, {c1, c2},
            {roles[perm[0]], roles[perm[1]], roles[perm[2]]}, cycle_before,
            latency_before));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return out;
}

enum class Selection { kMinMaxCycle, kRatio };

struct LoopSpec {
  Selection selection = Selection::kMinMaxCycle;
  bool three_way = false;
  std::optional<double> period_bound;
  std::optional<double> latency_cap;
};

struct LoopResult {
  HeuristicState state;
  CostReport report;
  bool met_period = false;
  std::vector<SplitStep> steps;
};

// The shared splitting loop: repeatedly split the bottleneck interval with
// the best admissible candidate until the period bound is met or no
// candidate qualifies.
LoopResult RunSplitLoop(const PipelineApp& app, const Platform& platform,
                        const LoopSpec& spec) {
  LoopResult r;
  r.state = InitialState(app, platform);
  r.report = EvaluateUnchecked(app, platform, r.state.mapping);
  while (true) {
    if (spec.period_bound && WithinBound(r.report.period, *spec.period_bound)) {
      break;
    }
    const int j = r.report.bottleneck;
    std::vector<SplitCandidate> candidates;
    if (spec.three_way && CanSplit(r.state, j, 3)) {
      candidates = Collect3Splits(app, platform, r.state, j);
    } else if (CanSplit(r.state, j, 2)) {
      candidates = Collect2Splits(app, platform, r.state, j);
    } else {
      break;
    }

    const SplitCandidate* best = nullptr;
    double best_score = 0.0;
    for (const SplitCandidate& c : candidates) {
      if (spec.latency_cap && !WithinBound(c.latency_after, *spec.latency_cap)) {
        continue;
      }
      double score;
      if (spec.selection == Selection::kMinMaxCycle) {
        score = c.MaxNewCycle();
        if (!(score < c.cycle_before)) continue;
      } else {
        if (!c.AllPeriodsImprove()) continue;
        score = c.MaxRatio();
      }
      if (best == nullptr || score < best_score) {
        best = &c;
        best_score = score;
      }
    }
    if (best == nullptr) break;

    SplitStep step;
    step.interval = j;
    step.cycle_before = best->cycle_before;
    step.max_cycle_after = best->MaxNewCycle();
    step.before = r.report;
    r.state = ApplySplit(r.state, *best);
    r.report = EvaluateUnchecked(app, platform, r.state.mapping);
    step.after = r.report;
    r.steps.push_back(step);
  }
  r.met_period =
      spec.period_bound && WithinBound(r.report.period, *spec.period_bound);
  return r;
}

void CheckBound(double bound, const char* what) {
  if (!(bound > 0.0) || std::isnan(bound)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " bound must be positive");
  }
}

IntervalMapping PeriodBounded(const PipelineApp& app, const Platform& platform,
                              double period_bound, const LoopSpec& spec,
                              HeuristicTrace* trace) {
  ValidateApp(app);
  ValidatePlatform(platform);
  CheckBound(period_bound, "period");
  LoopSpec s = spec;
  s.period_bound = period_bound;
  LoopResult r = RunSplitLoop(app, platform, s);
  if (trace != nullptr) {
    trace->steps = r.steps;
    trace->trials = 1;
  }
  if (!r.met_period) {
    throw InfeasibleError(r.report.period,
                          "lowest period reached is " +
                              std::to_string(r.report.period) + " > " +
                              std::to_string(period_bound));
  }
  return r.state.mapping;
}

double OptimalLatencyValue(const PipelineApp& app, const Platform& platform) {
  return EvaluateUnchecked(
             app, platform,
             SingleIntervalMapping(app.stages(), FastestProcessor(platform)))
      .latency;
}

IntervalMapping LatencyBounded(const PipelineApp& app,
                               const Platform& platform, double latency_bound,
                               Selection selection, HeuristicTrace* trace) {
  ValidateApp(app);
  ValidatePlatform(platform);
  CheckBound(latency_bound, "latency");
  const double optimal = OptimalLatencyValue(app, platform);
  if (!WithinBound(optimal, latency_bound)) {
    throw InfeasibleError(optimal, "latency bound " +
                                       std::to_string(latency_bound) +
                                       " is below the optimal latency " +
                                       std::to_string(optimal));
  }
  LoopSpec spec;
  spec.selection = selection;
  spec.latency_cap = latency_bound;
  LoopResult r = RunSplitLoop(app, platform, spec);
  if (trace != nullptr) {
    trace->steps = r.steps;
    trace->trials = 1;
  }
  return r.state.mapping;
}

}  // namespace

std::span<const HeuristicId> AllHeuristics() { return kAllHeuristics; }

std::string_view HeuristicName(HeuristicId id) {
  switch (id) {
    case HeuristicId::kSpMonoP:
      return "h1";
    case HeuristicId::kExplo3Mono:
      return "h2a";
    case HeuristicId::kExplo3Bi:
      return "h2b";
    case HeuristicId::kSpBiP:
      return "h3";
    case HeuristicId::kSpMonoL:
      return "h4";
    case HeuristicId::kSpBiL:
      return "h5";
  }
  return "?";
}

std::string_view HeuristicAlias(HeuristicId id) {
  switch (id) {
    case HeuristicId::kSpMonoP:
      return "sp-mono-p";
    case HeuristicId::kExplo3Mono:
      return "3explo-mono";
    case HeuristicId::kExplo3Bi:
      return "3explo-bi";
    case HeuristicId::kSpBiP:
      return "sp-bi-p";
    case HeuristicId::kSpMonoL:
      return "sp-mono-l";
    case HeuristicId::kSpBiL:
      return "sp-bi-l";
  }
  return "?";
}

HeuristicId ParseHeuristic(std::string_view name) {
  for (HeuristicId id : kAllHeuristics) {
    if (name == HeuristicName(id) || name == HeuristicAlias(id)) return id;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown heuristic '" + std::string(name) + "'");
}

TargetKind HeuristicTargetKind(HeuristicId id) {
  switch (id) {
    case HeuristicId::kSpMonoL:
    case HeuristicId::kSpBiL:
      return TargetKind::kFixedLatency;
    default:
      return TargetKind::kFixedPeriod;
  }
}

std::string_view TargetKindName(TargetKind kind) {
  return kind == TargetKind::kFixedPeriod ? "period" : "latency";
}

double SplitCandidate::MaxNewCycle() const {
  return *std::max_element(new_cycle.begin(), new_cycle.end());
}

double SplitCandidate::MaxRatio() const {
  double worst = -std::numeric_limits<double>::infinity();
  for (double dp : delta_period) worst = std::max(worst, delta_latency / dp);
  return worst;
}

bool SplitCandidate::AllPeriodsImprove() const {
  return std::all_of(delta_period.begin(), delta_period.end(),
                     [](double dp) { return dp > 0.0; });
}

HeuristicState InitialState(const PipelineApp& app, const Platform& platform) {
  ValidateApp(app);
  ValidatePlatform(platform);
  std::vector<int> order = ProcessorsBySpeed(platform);
  HeuristicState state;
  state.mapping = SingleIntervalMapping(app.stages(), order.front());
  state.used.push_back(order.front());
  state.unused.assign(order.begin() + 1, order.end());
  return state;
}

std::vector<SplitCandidate> Enumerate2Splits(const PipelineApp& app,
                                             const Platform& platform,
                                             const HeuristicState& state,
                                             int j) {
  CheckInterval(state, j);
  if (!CanSplit(state, j, 2)) {
    throw Error(ErrorCode::kNoSplitPossible,
                "interval " + std::to_string(j) +
                    " cannot be split in two parts");
  }
  return Collect2Splits(app, platform, state, j);
}

std::vector<SplitCandidate> Enumerate3Splits(const PipelineApp& app,
                                             const Platform& platform,
                                             const HeuristicState& state,
                                             int j) {
  CheckInterval(state, j);
  if (!CanSplit(state, j, 3)) {
    throw Error(ErrorCode::kNoSplitPossible,
                "interval " + std::to_string(j) +
                    " cannot be split in three parts");
  }
  return Collect3Splits(app, platform, state, j);
}

HeuristicState ApplySplit(const HeuristicState& state,
                          const SplitCandidate& candidate) {
  HeuristicState next;
  next.mapping = SplitMapping(state.mapping, candidate.target_interval,
                              candidate.parts, candidate.procs);
  next.used = state.used;
  next.unused = state.unused;
  const size_t fresh = candidate.parts.size() - 1;
  for (size_t i = 0; i < fresh; ++i) {
    next.used.push_back(next.unused.front());
    next.unused.pop_front();
  }
  return next;
}

IntervalMapping SpMonoP(const PipelineApp& app, const Platform& platform,
                        double period_bound, HeuristicTrace* trace) {
  return PeriodBounded(app, platform, period_bound,
                       LoopSpec{Selection::kMinMaxCycle, false, {}, {}}, trace);
}

IntervalMapping Explo3Mono(const PipelineApp& app, const Platform& platform,
                           double period_bound, HeuristicTrace* trace) {
  return PeriodBounded(app, platform, period_bound,
                       LoopSpec{Selection::kMinMaxCycle, true, {}, {}}, trace);
}

IntervalMapping Explo3Bi(const PipelineApp& app, const Platform& platform,
                         double period_bound, HeuristicTrace* trace) {
  return PeriodBounded(app, platform, period_bound,
                       LoopSpec{Selection::kRatio, true, {}, {}}, trace);
}

// Bisection on the tolerated relative latency increase over the optimum. Each
// trial is a ratio-driven two-way splitting run restricted to splits whose
// resulting latency stays within (1 + slack) * optimum. The lowest-latency
// mapping meeting the period bound over all trials wins.
IntervalMapping SpBiP(const PipelineApp& app, const Platform& platform,
                      double period_bound, HeuristicTrace* trace) {
  ValidateApp(app);
  ValidatePlatform(platform);
  CheckBound(period_bound, "period");
  const double optimal = OptimalLatencyValue(app, platform);

  std::optional<LoopResult> best;
  double lowest_period = std::numeric_limits<double>::infinity();
  int trials = 0;
  auto feasible = [&](double slack) {
    LoopSpec spec;
    spec.selection = Selection::kRatio;
    spec.period_bound = period_bound;
    spec.latency_cap = (1.0 + slack) * optimal;
    LoopResult r = RunSplitLoop(app, platform, spec);
    ++trials;
    lowest_period = std::min(lowest_period, r.report.period);
    const bool met = r.met_period;
    if (met && (!best || r.report.latency < best->report.latency)) {
      best = std::move(r);
    }
    return met;
  };

  double slack = kSlackStart;
  while (!feasible(slack)) {
    if (slack >= kSlackCap) {
      if (trace != nullptr) trace->trials = trials;
      throw InfeasibleError(lowest_period,
                            "no latency slack up to 2^16 reaches period " +
                                std::to_string(period_bound));
    }
    slack *= 2.0;
  }
  double lo = 0.0;
  double hi = slack;
  for (int i = 0; i < kSlackBisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (trace != nullptr) {
    trace->steps = best->steps;
    trace->trials = trials;
  }
  return best->state.mapping;
}

IntervalMapping SpMonoL(const PipelineApp& app, const Platform& platform,
                        double latency_bound, HeuristicTrace* trace) {
  return LatencyBounded(app, platform, latency_bound, Selection::kMinMaxCycle,
                        trace);
}

IntervalMapping SpBiL(const PipelineApp& app, const Platform& platform,
                      double latency_bound, HeuristicTrace* trace) {
  return LatencyBounded(app, platform, latency_bound, Selection::kRatio, trace);
}

IntervalMapping RunHeuristic(HeuristicId id, const PipelineApp& app,
                             const Platform& platform, BicriteriaTarget target,
                             HeuristicTrace* trace) {
  if (target.kind != HeuristicTargetKind(id)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(HeuristicName(id)) + " takes a fixed " +
                    std::string(TargetKindName(HeuristicTargetKind(id))) +
                    " target");
  }
  switch (id) {
    case HeuristicId::kSpMonoP:
      return SpMonoP(app, platform, target.value, trace);
    case HeuristicId::kExplo3Mono:
      return Explo3Mono(app, platform, target.value, trace);
    case HeuristicId::kExplo3Bi:
      return Explo3Bi(app, platform, target.value, trace);
    case HeuristicId::kSpBiP:
      return SpBiP(app, platform, target.value, trace);
    case HeuristicId::kSpMonoL:
      return SpMonoL(app, platform, target.value, trace);
    case HeuristicId::kSpBiL:
      return SpBiL(app, platform, target.value, trace);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown heuristic");
}

}  // namespace pipemap

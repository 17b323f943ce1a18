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

#ifndef PIPEMAP_HARNESS_H_
#define PIPEMAP_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pipemap/gen.h"
#include "pipemap/heuristics.h"
#include "pipemap/model.h"

namespace pipemap {

// kNatural runs every heuristic against its own kind of bound, so a single
// sweep can cover all six.
enum class SweepMode { kFixedPeriod, kFixedLatency, kNatural };

SweepMode ParseSweepMode(std::string_view name);  // period|latency|natural

struct SweepSpec {
  std::vector<ExperimentConfig> configs;
  SweepMode mode = SweepMode::kNatural;
  std::vector<double> grid;  // strictly increasing, positive
  std::vector<HeuristicId> heuristics;
  int instances = 1;  // instance k of a config uses seed config.seed + k
  int jobs = 1;
  bool record_wall_time = false;
};

struct SweepRow {
  ExperimentConfig config;  // seed is the per-instance seed
  HeuristicId heuristic = HeuristicId::kSpMonoP;
  TargetKind mode = TargetKind::kFixedPeriod;
  double threshold = 0.0;
  bool feasible = false;
  double period = 0.0;   // meaningful when feasible
  double latency = 0.0;  // meaningful when feasible
  IntervalMapping mapping;
  std::optional<double> wall_ms;
  std::string error;  // why an infeasible row failed
};

// count points from lo to hi, both included, evenly spaced in log scale.
std::vector<double> GeometricGrid(double lo, double hi, int count);

// Throws Error(kInvalidArgument) on an empty or unordered grid, no configs,
// no heuristics, instances < 1, or a heuristic that does not fit `mode`.
void ValidateSweepSpec(const SweepSpec& spec);

// One row per (config, instance, heuristic, threshold) in that order. Rows
// are computed on spec.jobs threads; the output does not depend on it.
// Failures never abort the sweep; they become infeasible rows. Non-monotone
// feasibility along the grid is reported through `warnings`.
std::vector<SweepRow> RunSweep(const SweepSpec& spec,
                               std::vector<std::string>* warnings = nullptr);

// Columns: family,n,p,seed,heuristic,mode,threshold,feasible,period,latency,
// wall_ms. Reals use 6 significant digits; wall_ms stays empty unless the
// sweep recorded it.
std::string FormatSweepCsv(const std::vector<SweepRow>& rows);

// Plain "key = values" text:
//
//   family = e1 e2        # one or more
//   n = 10 20
//   p = 10
//   seed = 1
//   instances = 50
//   mode = natural        # period | latency | natural
//   heuristics = all      # or a list of names
//   grid = geometric 1 100 16   # or an explicit list of values
//   jobs = 1
//
// Configs are the product of family, n and p.
SweepSpec ParseSweepSpec(std::string_view text);

enum class ThresholdStatus { kBracketed, kNeverFails, kAlwaysFails };

struct InstanceThreshold {
  ThresholdStatus status = ThresholdStatus::kBracketed;
  // Largest grid value at which the heuristic failed (kBracketed), the grid
  // minimum (kNeverFails) or the grid maximum (kAlwaysFails).
  double value = 0.0;
  std::uint64_t seed = 0;
  // False when the heuristic succeeded at some value and failed above it.
  bool monotone = true;
};

struct FailureThreshold {
  double mean = 0.0;
  std::vector<InstanceThreshold> per_instance;
  int counted = 0;  // instances that entered the mean
};

// 64 log-spaced points from 0.01 to 10 times the optimal latency.
std::vector<double> DefaultThresholdGrid(const PipelineApp& app,
                                         const Platform& platform);

InstanceThreshold FailureThresholdForInstance(const PipelineApp& app,
                                              const Platform& platform,
                                              HeuristicId heuristic,
                                              const std::vector<double>& grid);

// Per-instance thresholds over `instances` seeds of `config`, and their mean.
// Bracketed instances contribute their value, never-failing ones the grid
// minimum, always-failing ones nothing. An empty `grid` selects
// DefaultThresholdGrid per instance. Throws Error(kNeverFails) or
// Error(kAlwaysFails) when every instance is in that state, and
// Error(kInvalidArgument) when `mode` does not fit the heuristic.
FailureThreshold ComputeFailureThreshold(const ExperimentConfig& config,
                                         HeuristicId heuristic,
                                         TargetKind mode,
                                         const std::vector<double>& grid,
                                         int instances);

struct PlotPoint {
  double threshold = 0.0;
  // Mean achieved latency (period bound) or period (latency bound) over the
  // feasible rows; empty when none was feasible.
  std::optional<double> mean_achieved;
  int feasible = 0;
  int total = 0;
};

struct PlotSeries {
  Family family = Family::kE1;
  int stages = 0;
  int processors = 0;
  HeuristicId heuristic = HeuristicId::kSpMonoP;
  TargetKind mode = TargetKind::kFixedPeriod;
  std::vector<PlotPoint> points;
};

// One series per (family, n, p, heuristic), in order of first appearance,
// points by ascending threshold.
std::vector<PlotSeries> AggregatePlotData(const std::vector<SweepRow>& rows);

// "<family>_n<N>_p<P>_<heuristic>.dat"
std::string PlotSeriesFileName(const PlotSeries& series);
// Whitespace separated: threshold mean feasible total; "nan" for no data.
std::string FormatPlotSeries(const PlotSeries& series);

}  // namespace pipemap

#endif  // PIPEMAP_HARNESS_H_

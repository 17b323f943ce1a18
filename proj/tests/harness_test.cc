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

#include "pipemap/harness.h"

#include <gtest/gtest.h>

#include "pipemap/error.h"
#include "pipemap/oracle.h"

namespace pipemap {
namespace {

SweepSpec SmallSpec() {
  SweepSpec spec;
  spec.configs = {{Family::kE1, 5, 10, 1}, {Family::kE4, 6, 4, 9}};
  spec.mode = SweepMode::kNatural;
  spec.grid = GeometricGrid(1.0, 200.0, 12);
  spec.heuristics.assign(AllHeuristics().begin(), AllHeuristics().end());
  spec.instances = 3;
  return spec;
}

TEST(GeometricGridTest, EndpointsAndRatio) {
  const std::vector<double> g = GeometricGrid(0.5, 8.0, 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), 0.5);
  EXPECT_EQ(g.back(), 8.0);
  EXPECT_NEAR(g[2], 2.0, 1e-12);
  EXPECT_THROW(GeometricGrid(2.0, 1.0, 4), Error);
  EXPECT_EQ(GeometricGrid(3.0, 3.0, 1), (std::vector<double>{3.0}));
}

TEST(RunSweepTest, DeterministicCsvAcrossJobCounts) {
  SweepSpec spec = SmallSpec();
  const std::string a = FormatSweepCsv(RunSweep(spec));
  const std::string b = FormatSweepCsv(RunSweep(spec));
  spec.jobs = 4;
  const std::string c = FormatSweepCsv(RunSweep(spec));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.substr(0, a.find('\n')),
            "family,n,p,seed,heuristic,mode,threshold,feasible,period,latency,"
            "wall_ms");
  // 2 configs x 3 instances x 6 heuristics x 12 grid values, plus a header.
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 2 * 3 * 6 * 12 + 1);
}

TEST(RunSweepTest, FeasibleRowsHonorTheirBound) {
  const std::vector<SweepRow> rows = RunSweep(SmallSpec());
  int feasible = 0;
  for (const SweepRow& r : rows) {
    if (!r.feasible) {
      EXPECT_FALSE(r.error.empty());
      continue;
    }
    ++feasible;
    const Instance inst = Generate(r.config);
    const CostReport c = Evaluate(inst.app, inst.platform, r.mapping);
    EXPECT_EQ(c.period, r.period);
    EXPECT_EQ(c.latency, r.latency);
    const double got =
        r.mode == TargetKind::kFixedPeriod ? c.period : c.latency;
    EXPECT_TRUE(WithinBound(got, r.threshold));
  }
  EXPECT_GT(feasible, 0);
}

TEST(RunSweepTest, LooseLatencyBoundAlwaysFeasibleForH4) {
  SweepSpec spec;
  spec.configs = {{Family::kE2, 8, 6, 3}};
  spec.mode = SweepMode::kFixedLatency;
  spec.heuristics = {HeuristicId::kSpMonoL};
  spec.instances = 5;
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const Instance inst = Generate({Family::kE2, 8, 6, 3u + k});
    worst = std::max(worst, OptimalLatency(inst.app, inst.platform).value);
  }
  spec.grid = {worst, 2 * worst};
  for (const SweepRow& r : RunSweep(spec)) EXPECT_TRUE(r.feasible);
}

TEST(RunSweepTest, BelowOracleBoundAlwaysInfeasible) {
  SweepSpec spec;
  spec.configs = {{Family::kE3, 4, 3, 5}};
  spec.mode = SweepMode::kFixedPeriod;
  spec.heuristics = {HeuristicId::kSpMonoP, HeuristicId::kExplo3Mono,
                     HeuristicId::kExplo3Bi, HeuristicId::kSpBiP};
  const Instance inst = Generate(spec.configs[0]);
  const double opt = BruteForceMinPeriod(inst.app, inst.platform).value;
  spec.grid = {opt * 0.5, opt * 0.99};
  for (const SweepRow& r : RunSweep(spec)) EXPECT_FALSE(r.feasible);
}

TEST(RunSweepTest, TimingColumnOnlyWhenRequested) {
  SweepSpec spec = SmallSpec();
  spec.instances = 1;
  spec.record_wall_time = true;
  const std::vector<SweepRow> rows = RunSweep(spec);
  for (const SweepRow& r : rows) ASSERT_TRUE(r.wall_ms.has_value());
  const std::string csv = FormatSweepCsv(rows);
  const std::string first_row = csv.substr(csv.find('\n') + 1);
  EXPECT_NE(first_row.substr(0, first_row.find('\n')).back(), ',');
}

TEST(ValidateSweepSpecTest, RejectsBadSpecs) {
  SweepSpec spec = SmallSpec();
  spec.mode = SweepMode::kFixedPeriod;
  EXPECT_THROW(ValidateSweepSpec(spec), Error);
  spec = SmallSpec();
  spec.grid = {2.0, 1.0};
  EXPECT_THROW(ValidateSweepSpec(spec), Error);
  spec = SmallSpec();
  spec.heuristics.clear();
  EXPECT_THROW(ValidateSweepSpec(spec), Error);
}

TEST(ParseSweepSpecTest, ProductOfConfigs) {
  const SweepSpec spec = ParseSweepSpec(
      "# comment\n"
      "family = e1 E2\n"
      "n = 5 10\n"
      "p = 10\n"
      "seed = 7\n"
      "instances = 4\n"
      "mode = period\n"
      "heuristics = all\n"
      "grid = geometric 0.5 50 8\n"
      "jobs = 2\n");
  ASSERT_EQ(spec.configs.size(), 4u);
  EXPECT_EQ(spec.configs[1], (ExperimentConfig{Family::kE1, 10, 10, 7}));
  EXPECT_EQ(spec.configs[2].family, Family::kE2);
  EXPECT_EQ(spec.instances, 4);
  EXPECT_EQ(spec.jobs, 2);
  EXPECT_EQ(spec.grid.size(), 8u);
  EXPECT_EQ(spec.heuristics,
            (std::vector<HeuristicId>{HeuristicId::kSpMonoP,
                                      HeuristicId::kExplo3Mono,
                                      HeuristicId::kExplo3Bi,
                                      HeuristicId::kSpBiP}));
}

TEST(ParseSweepSpecTest, ExplicitGridAndErrors) {
  const SweepSpec spec = ParseSweepSpec(
      "family=e3\nn=5\np=4\nmode=latency\nheuristics=h4 sp-bi-l\n"
      "grid=10 20 40\n");
  EXPECT_EQ(spec.grid, (std::vector<double>{10, 20, 40}));
  EXPECT_EQ(spec.configs[0].seed, 0u);
  auto code = [](std::string_view text) {
    try {
      ParseSweepSpec(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kNeverFails;
  };
  EXPECT_EQ(code("family=e1\nn=5\np=4\nheuristics=all\n"), ErrorCode::kParseError);
  EXPECT_EQ(code("family=e1\nn=5\np=4\nheuristics=all\ngrid=1 x\n"),
            ErrorCode::kParseError);
  EXPECT_EQ(code("family=e1\nn=5\np=4\nheuristics=all\ngrid=1\ncolor=red\n"),
            ErrorCode::kParseError);
  EXPECT_EQ(code("family=e1\nn=5\np=4\nheuristics=h1\nmode=latency\ngrid=1\n"),
            ErrorCode::kInvalidArgument);
}

TEST(FailureThresholdTest, TwinInstance) {
  PipelineApp app{{10, 10}, {0, 0, 0}};
  Platform pf{{10, 10}, 1.0};
  const InstanceThreshold t = FailureThresholdForInstance(
      app, pf, HeuristicId::kSpMonoP, {0.5, 1.0, 2.0});
  EXPECT_EQ(t.status, ThresholdStatus::kBracketed);
  EXPECT_EQ(t.value, 0.5);
  EXPECT_TRUE(t.monotone);
}

TEST(FailureThresholdTest, GridStartingAtOptimalLatencyNeverFailsForH4) {
  const Instance inst = Generate({Family::kE1, 10, 10, 4});
  const double l_opt = OptimalLatency(inst.app, inst.platform).value;
  const InstanceThreshold t = FailureThresholdForInstance(
      inst.app, inst.platform, HeuristicId::kSpMonoL,
      GeometricGrid(l_opt, 3 * l_opt, 5));
  EXPECT_EQ(t.status, ThresholdStatus::kNeverFails);
  EXPECT_EQ(t.value, l_opt);
}

TEST(FailureThresholdTest, AlwaysFailsBelowOptimum) {
  const Instance inst = Generate({Family::kE1, 10, 10, 4});
  const double l_opt = OptimalLatency(inst.app, inst.platform).value;
  const InstanceThreshold t = FailureThresholdForInstance(
      inst.app, inst.platform, HeuristicId::kSpBiL, {0.5 * l_opt, 0.9 * l_opt});
  EXPECT_EQ(t.status, ThresholdStatus::kAlwaysFails);
}

TEST(FailureThresholdTest, MeanOverInstances) {
  const ExperimentConfig c{Family::kE1, 10, 10, 42};
  const FailureThreshold f =
      ComputeFailureThreshold(c, HeuristicId::kSpMonoP,
                              TargetKind::kFixedPeriod, {}, 5);
  ASSERT_EQ(f.per_instance.size(), 5u);
  double sum = 0.0;
  int counted = 0;
  for (int k = 0; k < 5; ++k) {
    const Instance inst = Generate({c.family, c.stages, c.processors, c.seed + k});
    const InstanceThreshold t = FailureThresholdForInstance(
        inst.app, inst.platform, HeuristicId::kSpMonoP,
        DefaultThresholdGrid(inst.app, inst.platform));
    EXPECT_EQ(f.per_instance[k].value, t.value);
    EXPECT_EQ(f.per_instance[k].seed, c.seed + k);
    if (t.status != ThresholdStatus::kAlwaysFails) {
      sum += t.value;
      ++counted;
    }
  }
  EXPECT_EQ(f.counted, counted);
  EXPECT_DOUBLE_EQ(f.mean, sum / counted);
}

TEST(FailureThresholdTest, Errors) {
  const ExperimentConfig c{Family::kE1, 6, 4, 1};
  auto code = [&](HeuristicId h, TargetKind k, std::vector<double> grid) {
    try {
      ComputeFailureThreshold(c, h, k, grid, 2);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParseError;
  };
  EXPECT_EQ(code(HeuristicId::kSpMonoL, TargetKind::kFixedPeriod, {}),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code(HeuristicId::kSpMonoL, TargetKind::kFixedLatency, {1e6, 2e6}),
            ErrorCode::kNeverFails);
  EXPECT_EQ(code(HeuristicId::kSpMonoL, TargetKind::kFixedLatency, {1e-3, 1e-2}),
            ErrorCode::kAlwaysFails);
}

TEST(PlotDataTest, SingleInstanceSeriesEqualsRows) {
  SweepSpec spec;
  spec.configs = {{Family::kE1, 5, 10, 1}};
  spec.mode = SweepMode::kFixedLatency;
  spec.heuristics = {HeuristicId::kSpMonoL};
  const Instance inst = Generate(spec.configs[0]);
  const double l_opt = OptimalLatency(inst.app, inst.platform).value;
  spec.grid = {0.5 * l_opt, l_opt, 2 * l_opt};
  const std::vector<SweepRow> rows = RunSweep(spec);
  const std::vector<PlotSeries> series = AggregatePlotData(rows);
  ASSERT_EQ(series.size(), 1u);
  ASSERT_EQ(series[0].points.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    const PlotPoint& pt = series[0].points[i];
    EXPECT_EQ(pt.threshold, rows[i].threshold);
    EXPECT_EQ(pt.total, 1);
    EXPECT_EQ(pt.feasible, rows[i].feasible ? 1 : 0);
    if (rows[i].feasible) EXPECT_EQ(*pt.mean_achieved, rows[i].period);
  }
  EXPECT_FALSE(series[0].points[0].mean_achieved.has_value());
  // At the optimal latency h4 keeps everything on the fastest processor.
  EXPECT_EQ(*series[0].points[1].mean_achieved,
            Evaluate(inst.app, inst.platform,
                     OptimalLatency(inst.app, inst.platform).mapping)
                .period);
  EXPECT_EQ(PlotSeriesFileName(series[0]), "e1_n5_p10_h4.dat");
  const std::string text = FormatPlotSeries(series[0]);
  EXPECT_EQ(text.substr(0, text.find('\n')), "# latency mean_period feasible total");
  EXPECT_NE(text.find(" nan 0 1\n"), std::string::npos);
}

TEST(PlotDataTest, AveragesOverInstances) {
  SweepSpec spec = SmallSpec();
  const std::vector<SweepRow> rows = RunSweep(spec);
  const std::vector<PlotSeries> series = AggregatePlotData(rows);
  EXPECT_EQ(series.size(), 2u * 6u);
  for (const PlotSeries& s : series) {
    EXPECT_EQ(s.points.size(), spec.grid.size());
    for (const PlotPoint& pt : s.points) EXPECT_EQ(pt.total, 3);
  }
}

}  // namespace
}  // namespace pipemap

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

// pipemap: command line front end for the pipemap library.
//
//   pipemap gen       --family e1 --stages 10 --procs 10 --seed 42 [--count K --out DIR]
//   pipemap gen       --nmwts "x1 x2;y1 y2;z1 z2"
//   pipemap eval      INSTANCE --map "1-2:1 3-3:2"
//   pipemap solve     INSTANCE --heuristic h1 (--period K | --latency K)
//   pipemap oracle    INSTANCE (--min-period | --min-latency | --pareto |
//                               --optimal-latency | --decide K | ...)
//   pipemap simulate  INSTANCE --map MAP [--datasets N]
//   pipemap sweep     (--spec FILE | flags) [--out CSV] [--plot-data DIR]
//   pipemap threshold --family e1 --stages 10 --procs 10 --heuristic h1
//
// Exit codes: 0 success, 2 infeasible, 3 invalid input, 4 instance too large.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pipemap/error.h"
#include "pipemap/gen.h"
#include "pipemap/harness.h"
#include "pipemap/heuristics.h"
#include "pipemap/instance_io.h"
#include "pipemap/model.h"
#include "pipemap/oracle.h"
#include "pipemap/sim.h"

namespace pipemap {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitTooLarge = 4;

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasible:
    case ErrorCode::kNoSplitPossible:
      return kExitInfeasible;
    case ErrorCode::kInstanceTooLarge:
      return kExitTooLarge;
    default:
      return kExitInvalid;
  }
}

void PrintCosts(const PipelineApp& app, const Platform& platform,
                const IntervalMapping& map) {
  const CostReport r = Evaluate(app, platform, map);
  std::cout << FormatMapping(map) << "\n"
            << "period " << FormatReal(r.period) << "\n"
            << "latency " << FormatReal(r.latency) << "\n"
            << "bottleneck " << r.bottleneck << "\n";
}

std::vector<int> ParseIntList(const std::string& text) {
  std::istringstream in(text);
  std::vector<int> out;
  std::string word;
  while (in >> word) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(word, &used));
      if (used != word.size()) throw std::invalid_argument(word);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "not an integer '" + word + "'");
    }
  }
  return out;
}

// "x1 x2;y1 y2;z1 z2"
NmwtsInstance ParseNmwts(const std::string& text) {
  std::vector<std::string> groups;
  std::string rest = text;
  for (size_t pos; (pos = rest.find(';')) != std::string::npos;) {
    groups.push_back(rest.substr(0, pos));
    rest = rest.substr(pos + 1);
  }
  groups.push_back(rest);
  if (groups.size() != 3) {
    throw Error(ErrorCode::kParseError, "--nmwts wants 'x...;y...;z...'");
  }
  return NmwtsInstance{ParseIntList(groups[0]), ParseIntList(groups[1]),
                       ParseIntList(groups[2])};
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot write '" + path.string() + "'");
  }
}

struct GenArgs {
  std::string family = "e1";
  int stages = 10;
  int procs = 10;
  std::uint64_t seed = 0;
  int count = 1;
  std::string out;
  std::string nmwts;
};

int RunGen(const GenArgs& a) {
  if (!a.nmwts.empty()) {
    // The partition instance as a communication-free pipeline: elements
    // become stage weights and values become processor speeds.
    const Hetero1DInstance h = BuildReductionInstance(ParseNmwts(a.nmwts));
    const PipelineApp app{h.a, std::vector<double>(h.a.size() + 1, 0.0)};
    const Platform pf{h.s, 1.0};
    std::cout << "# partition bound " << FormatReal(h.bound) << "\n"
              << FormatInstance(app, pf);
    return kExitOk;
  }
  const ExperimentConfig base{ParseFamily(a.family), a.stages, a.procs, a.seed};
  if (a.count < 1) throw Error(ErrorCode::kInvalidArgument, "--count must be >= 1");
  if (a.out.empty()) {
    if (a.count != 1) {
      throw Error(ErrorCode::kInvalidArgument, "--count needs --out DIR");
    }
    const Instance inst = Generate(base);
    std::cout << FormatInstance(inst.app, inst.platform);
    return kExitOk;
  }
  std::filesystem::create_directories(a.out);
  for (int k = 0; k < a.count; ++k) {
    ExperimentConfig c = base;
    c.seed = base.seed + static_cast<std::uint64_t>(k);
    const Instance inst = Generate(c);
    const std::filesystem::path path =
        std::filesystem::path(a.out) / InstanceFileName(c);
    WriteInstanceFile(path, inst.app, inst.platform);
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

struct EvalArgs {
  std::string instance;
  std::string map;
};

int RunEval(const EvalArgs& a) {
  const Instance inst = ReadInstanceFile(a.instance);
  PrintCosts(inst.app, inst.platform, ParseMapping(a.map));
  return kExitOk;
}

struct SolveArgs {
  std::string instance;
  std::string heuristic;
  std::optional<double> period;
  std::optional<double> latency;
  bool trace = false;
};

int RunSolve(const SolveArgs& a) {
  const Instance inst = ReadInstanceFile(a.instance);
  const HeuristicId id = ParseHeuristic(a.heuristic);
  if (a.period.has_value() == a.latency.has_value()) {
    throw Error(ErrorCode::kInvalidArgument,
                "give exactly one of --period and --latency");
  }
  const BicriteriaTarget target =
      a.period ? BicriteriaTarget{TargetKind::kFixedPeriod, *a.period}
               : BicriteriaTarget{TargetKind::kFixedLatency, *a.latency};
  HeuristicTrace trace;
  const IntervalMapping map =
      RunHeuristic(id, inst.app, inst.platform, target, &trace);
  PrintCosts(inst.app, inst.platform, map);
  if (a.trace) {
    for (const SplitStep& s : trace.steps) {
      std::cout << "step interval " << s.interval << " cycle "
                << FormatReal(s.cycle_before) << " -> "
                << FormatReal(s.max_cycle_after) << " period "
                << FormatReal(s.after.period) << " latency "
                << FormatReal(s.after.latency) << "\n";
    }
    if (trace.trials > 1) std::cout << "trials " << trace.trials << "\n";
  }
  return kExitOk;
}

struct OracleArgs {
  std::string instance;
  bool min_period = false;
  bool min_latency = false;
  bool pareto = false;
  bool optimal_latency = false;
  std::optional<double> decide;
  std::optional<double> max_period;
  std::optional<double> max_latency;
  bool force = false;
};

int RunOracle(const OracleArgs& a) {
  const Instance inst = ReadInstanceFile(a.instance);
  OracleOptions o;
  o.force = a.force;
  const int queries = a.min_period + a.min_latency + a.pareto +
                      a.optimal_latency + a.decide.has_value() +
                      a.max_period.has_value() + a.max_latency.has_value();
  if (queries != 1) {
    throw Error(ErrorCode::kInvalidArgument, "give exactly one oracle query");
  }
  auto print_value = [&](const MappingValue& v) {
    std::cout << "value " << FormatReal(v.value) << "\n";
    PrintCosts(inst.app, inst.platform, v.mapping);
  };
  if (a.optimal_latency) {
    print_value(OptimalLatency(inst.app, inst.platform));
  } else if (a.min_period) {
    print_value(BruteForceMinPeriod(inst.app, inst.platform, o));
  } else if (a.min_latency) {
    print_value(BruteForceMinLatency(inst.app, inst.platform, o));
  } else if (a.max_period) {
    print_value(MinLatencyGivenPeriod(inst.app, inst.platform, *a.max_period, o));
  } else if (a.max_latency) {
    print_value(MinPeriodGivenLatency(inst.app, inst.platform, *a.max_latency, o));
  } else if (a.pareto) {
    const ParetoFront f = ComputeParetoFront(inst.app, inst.platform, o);
    std::cout << "# period latency mapping\n";
    for (const ParetoPoint& pt : f.points) {
      std::cout << FormatReal(pt.period) << " " << FormatReal(pt.latency) << " "
                << FormatMapping(pt.witness) << "\n";
    }
  } else {
    // Stage weights against processor speeds; communication is ignored.
    Hetero1DOptions ho;
    ho.force = a.force;
    const Hetero1DDecision d = DecideHetero1DPartition(
        {inst.app.work, inst.platform.speeds, *a.decide}, ho);
    if (!d.feasible) {
      std::cout << "no\n";
      return kExitInfeasible;
    }
    IntervalMapping witness{d.witness->parts, d.witness->sigma};
    std::cout << "yes\n"
              << FormatMapping(witness) << "\n"
              << "max_ratio " << FormatReal(d.witness->max_ratio) << "\n";
  }
  return kExitOk;
}

struct SimArgs {
  std::string instance;
  std::string map;
  int datasets = 0;
  bool times = false;
};

int RunSimulate(const SimArgs& a) {
  const Instance inst = ReadInstanceFile(a.instance);
  const IntervalMapping map = ParseMapping(a.map);
  const int n = a.datasets > 0 ? a.datasets : 2 * map.size() + 2;
  const SimReport r = Simulate(inst.app, inst.platform, map, n);
  const CostReport c = Evaluate(inst.app, inst.platform, map);
  std::cout << "datasets " << n << "\n"
            << "measured_period " << FormatReal(r.measured_period) << "\n"
            << "measured_latency " << FormatReal(r.measured_latency) << "\n"
            << "model_period " << FormatReal(c.period) << "\n"
            << "model_latency " << FormatReal(c.latency) << "\n"
            << "events " << r.trace_length << "\n";
  if (a.times) {
    for (double t : r.completion_times) std::cout << FormatReal(t) << "\n";
  }
  return kExitOk;
}

struct SweepArgs {
  std::string spec;
  std::vector<std::string> families;
  std::vector<int> stages;
  std::vector<int> procs;
  std::uint64_t seed = 0;
  int instances = 1;
  std::string mode = "natural";
  std::vector<std::string> heuristics{"all"};
  std::vector<double> grid;
  std::vector<double> geometric;
  std::string out;
  std::string plot_data;
  std::optional<int> jobs;
  bool timing = false;
};

SweepSpec SpecFromFlags(const SweepArgs& a) {
  if (a.families.empty() || a.stages.empty() || a.procs.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "give --spec FILE or --family, --stages and --procs");
  }
  SweepSpec spec;
  for (const std::string& f : a.families) {
    for (int n : a.stages) {
      for (int p : a.procs) spec.configs.push_back({ParseFamily(f), n, p, a.seed});
    }
  }
  spec.instances = a.instances;
  spec.mode = ParseSweepMode(a.mode);
  for (const std::string& h : a.heuristics) {
    if (h == "all") {
      for (HeuristicId id : AllHeuristics()) {
        if (spec.mode == SweepMode::kNatural ||
            (spec.mode == SweepMode::kFixedPeriod) ==
                (HeuristicTargetKind(id) == TargetKind::kFixedPeriod)) {
          spec.heuristics.push_back(id);
        }
      }
    } else {
      spec.heuristics.push_back(ParseHeuristic(h));
    }
  }
  if (!a.geometric.empty()) {
    if (a.geometric.size() != 3 || !a.grid.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "--geometric takes LO HI COUNT and excludes --grid");
    }
    spec.grid = GeometricGrid(a.geometric[0], a.geometric[1],
                              static_cast<int>(a.geometric[2]));
  } else {
    spec.grid = a.grid;
  }
  return spec;
}

int RunSweepCommand(const SweepArgs& a) {
  SweepSpec spec;
  if (!a.spec.empty()) {
    std::ifstream in(a.spec, std::ios::binary);
    if (!in) throw Error(ErrorCode::kParseError, "cannot read '" + a.spec + "'");
    std::ostringstream text;
    text << in.rdbuf();
    spec = ParseSweepSpec(text.str());
  } else {
    spec = SpecFromFlags(a);
  }
  if (a.jobs) spec.jobs = *a.jobs;
  spec.record_wall_time = a.timing;
  ValidateSweepSpec(spec);

  std::vector<std::string> warnings;
  const std::vector<SweepRow> rows = RunSweep(spec, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  const std::string csv = FormatSweepCsv(rows);
  if (a.out.empty() || a.out == "-") {
    std::cout << csv;
  } else {
    WriteFile(a.out, csv);
  }
  if (!a.plot_data.empty()) {
    std::filesystem::create_directories(a.plot_data);
    for (const PlotSeries& s : AggregatePlotData(rows)) {
      WriteFile(std::filesystem::path(a.plot_data) / PlotSeriesFileName(s),
                FormatPlotSeries(s));
    }
  }
  return kExitOk;
}

struct ThresholdArgs {
  std::string family = "e1";
  int stages = 10;
  int procs = 10;
  std::uint64_t seed = 0;
  int instances = 50;
  std::vector<std::string> heuristics{"all"};
  std::vector<double> grid;
  bool per_instance = false;
};

const char* StatusName(ThresholdStatus s) {
  switch (s) {
    case ThresholdStatus::kBracketed:
      return "bracketed";
    case ThresholdStatus::kNeverFails:
      return "never-fails";
    case ThresholdStatus::kAlwaysFails:
      return "always-fails";
  }
  return "?";
}

int RunThreshold(const ThresholdArgs& a) {
  const ExperimentConfig config{ParseFamily(a.family), a.stages, a.procs, a.seed};
  std::vector<HeuristicId> ids;
  for (const std::string& h : a.heuristics) {
    if (h == "all") {
      ids.insert(ids.end(), AllHeuristics().begin(), AllHeuristics().end());
    } else {
      ids.push_back(ParseHeuristic(h));
    }
  }
  std::cout << "heuristic mode mean counted instances\n";
  int rc = kExitOk;
  for (HeuristicId id : ids) {
    const TargetKind kind = HeuristicTargetKind(id);
    try {
      const FailureThreshold f =
          ComputeFailureThreshold(config, id, kind, a.grid, a.instances);
      std::cout << HeuristicName(id) << " " << TargetKindName(kind) << " "
                << FormatReal(f.mean) << " " << f.counted << " "
                << f.per_instance.size() << "\n";
      if (a.per_instance) {
        for (const InstanceThreshold& t : f.per_instance) {
          std::cout << "  seed " << t.seed << " " << StatusName(t.status) << " "
                    << FormatReal(t.value) << (t.monotone ? "" : " non-monotone")
                    << "\n";
        }
      }
    } catch (const Error& e) {
      std::cout << HeuristicName(id) << " " << TargetKindName(kind) << " "
                << ErrorCodeName(e.code()) << "\n";
      rc = kExitInvalid;
    }
  }
  return rc;
}

}  // namespace
}  // namespace pipemap

int main(int argc, char** argv) {
  using namespace pipemap;
  CLI::App app{"Map pipeline workflows onto heterogeneous processors"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->add_option("--family", gen.family, "e1, e2, e3 or e4");
  gen_cmd->add_option("--stages,-n", gen.stages, "Number of stages");
  gen_cmd->add_option("--procs,-p", gen.procs, "Number of processors");
  gen_cmd->add_option("--seed", gen.seed, "Seed of the first instance");
  gen_cmd->add_option("--count", gen.count, "Instances to write (needs --out)");
  gen_cmd->add_option("--out", gen.out, "Directory for instance files");
  gen_cmd->add_option("--nmwts", gen.nmwts,
                      "Build the partition instance of 'x...;y...;z...'")
      ->excludes("--family")
      ->excludes("--count");

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Period and latency of a mapping");
  eval_cmd->add_option("instance", eval.instance)->required();
  eval_cmd->add_option("--map", eval.map, "e.g. '1-2:1 3-3:2'")->required();

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run a heuristic");
  solve_cmd->add_option("instance", solve.instance)->required();
  solve_cmd->add_option("--heuristic,-H", solve.heuristic, "h1..h5 or alias")
      ->required();
  auto* period_opt = solve_cmd->add_option("--period", solve.period, "Period bound");
  solve_cmd->add_option("--latency", solve.latency, "Latency bound")
      ->excludes(period_opt);
  solve_cmd->add_flag("--trace", solve.trace, "Print accepted splits");

  OracleArgs oracle;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Exact solvers");
  oracle_cmd->add_option("instance", oracle.instance)->required();
  oracle_cmd->add_flag("--min-period", oracle.min_period);
  oracle_cmd->add_flag("--min-latency", oracle.min_latency);
  oracle_cmd->add_flag("--optimal-latency", oracle.optimal_latency);
  oracle_cmd->add_flag("--pareto", oracle.pareto);
  oracle_cmd->add_option("--decide", oracle.decide,
                         "Partition of the stage weights onto all speeds with "
                         "max load/speed <= K");
  oracle_cmd->add_option("--max-period", oracle.max_period,
                         "Minimum latency under a period bound");
  oracle_cmd->add_option("--max-latency", oracle.max_latency,
                         "Minimum period under a latency bound");
  oracle_cmd->add_flag("--force", oracle.force, "Ignore the size guards");

  SimArgs sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Discrete-event execution");
  sim_cmd->add_option("instance", sim.instance)->required();
  sim_cmd->add_option("--map", sim.map)->required();
  sim_cmd->add_option("--datasets", sim.datasets, "Default 2m + 2");
  sim_cmd->add_flag("--times", sim.times, "Print every completion time");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Threshold sweep to CSV");
  sweep_cmd->add_option("--spec", sweep.spec, "Sweep spec file");
  sweep_cmd->add_option("--family", sweep.families);
  sweep_cmd->add_option("--stages,-n", sweep.stages);
  sweep_cmd->add_option("--procs,-p", sweep.procs);
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--instances", sweep.instances);
  sweep_cmd->add_option("--mode", sweep.mode, "period, latency or natural");
  sweep_cmd->add_option("--heuristics", sweep.heuristics);
  sweep_cmd->add_option("--grid", sweep.grid, "Explicit threshold values");
  sweep_cmd->add_option("--geometric", sweep.geometric, "LO HI COUNT")
      ->expected(3);
  sweep_cmd->add_option("--out", sweep.out, "CSV path (default stdout)");
  sweep_cmd->add_option("--plot-data", sweep.plot_data,
                        "Directory for per-heuristic series files");
  sweep_cmd->add_option("--jobs,-j", sweep.jobs);
  sweep_cmd->add_flag("--timing", sweep.timing, "Fill the wall_ms column");

  ThresholdArgs thr;
  CLI::App* thr_cmd =
      app.add_subcommand("threshold", "Mean failure threshold per heuristic");
  thr_cmd->add_option("--family", thr.family);
  thr_cmd->add_option("--stages,-n", thr.stages);
  thr_cmd->add_option("--procs,-p", thr.procs);
  thr_cmd->add_option("--seed", thr.seed);
  thr_cmd->add_option("--instances", thr.instances);
  thr_cmd->add_option("--heuristic,-H", thr.heuristics);
  thr_cmd->add_option("--grid", thr.grid, "Shared grid (default per instance)");
  thr_cmd->add_flag("--per-instance", thr.per_instance);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*gen_cmd) return RunGen(gen);
    if (*eval_cmd) return RunEval(eval);
    if (*solve_cmd) return RunSolve(solve);
    if (*oracle_cmd) return RunOracle(oracle);
    if (*sim_cmd) return RunSimulate(sim);
    if (*sweep_cmd) return RunSweepCommand(sweep);
    if (*thr_cmd) return RunThreshold(thr);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: best " << FormatReal(e.best_value()) << "\n"
              << e.what() << "\n";
    return kExitInfeasible;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

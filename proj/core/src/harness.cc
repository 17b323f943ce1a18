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

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <thread>
#include <tuple>
#include <utility>

#include "pipemap/error.h"
#include "pipemap/oracle.h"

namespace pipemap {
namespace {

std::string Fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

bool ModeFits(SweepMode mode, HeuristicId id) {
  switch (mode) {
    case SweepMode::kNatural:
      return true;
    case SweepMode::kFixedPeriod:
      return HeuristicTargetKind(id) == TargetKind::kFixedPeriod;
    case SweepMode::kFixedLatency:
      return HeuristicTargetKind(id) == TargetKind::kFixedLatency;
  }
  return false;
}

void CheckGrid(const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "empty grid");
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i]) ||
        (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw Error(ErrorCode::kInvalidArgument,
                  "grid values must be positive and strictly increasing");
    }
  }
}

// Runs one heuristic at every grid value for one instance.
std::vector<SweepRow> RunInstance(const ExperimentConfig& config,
                                  const Instance& inst,
                                  const SweepSpec& spec,
                                  std::vector<std::string>* warnings) {
  std::vector<SweepRow> rows;
  rows.reserve(spec.heuristics.size() * spec.grid.size());
  for (HeuristicId h : spec.heuristics) {
    const TargetKind kind = HeuristicTargetKind(h);
    bool seen_feasible = false;
    bool warned = false;
    for (double t : spec.grid) {
      SweepRow row;
      row.config = config;
      row.heuristic = h;
      row.mode = kind;
      row.threshold = t;
      const auto start = std::chrono::steady_clock::now();
      try {
        row.mapping = RunHeuristic(h, inst.app, inst.platform, {kind, t});
        const CostReport r = Evaluate(inst.app, inst.platform, row.mapping);
        row.feasible = true;
        row.period = r.period;
        row.latency = r.latency;
      } catch (const Error& e) {
        row.feasible = false;
        row.mapping = {};
        row.error = e.what();
      }
      if (spec.record_wall_time) {
        row.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
      }
      if (row.feasible) {
        seen_feasible = true;
      } else if (seen_feasible && !warned && warnings != nullptr) {
        warned = true;
        warnings->push_back(
            std::string(HeuristicName(h)) + " on " + InstanceFileName(config) +
            ": infeasible at " + Fmt6(t) +
            " after succeeding at a tighter bound");
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<double> ParseReals(const std::vector<std::string>& words,
                               size_t from, const std::string& key) {
  std::vector<double> out;
  for (size_t i = from; i < words.size(); ++i) {
    double v = 0.0;
    const std::string& w = words[i];
    auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size()) {
      throw Error(ErrorCode::kParseError,
                  "'" + key + "': not a number '" + w + "'");
    }
    out.push_back(v);
  }
  return out;
}

long long ParseInteger(const std::string& w, const std::string& key) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || ptr != w.data() + w.size()) {
    throw Error(ErrorCode::kParseError,
                "'" + key + "': not an integer '" + w + "'");
  }
  return v;
}

}  // namespace

SweepMode ParseSweepMode(std::string_view name) {
  if (name == "period") return SweepMode::kFixedPeriod;
  if (name == "latency") return SweepMode::kFixedLatency;
  if (name == "natural") return SweepMode::kNatural;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown sweep mode '" + std::string(name) + "'");
}

std::vector<double> GeometricGrid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    if (count == 1 && lo > 0.0) return {lo};
    throw Error(ErrorCode::kInvalidArgument,
                "geometric grid needs 0 < lo < hi and count >= 2");
  }
  std::vector<double> grid(count);
  const double ratio = std::log(hi / lo);
  for (int i = 0; i < count; ++i) {
    grid[i] = lo * std::exp(ratio * i / (count - 1));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

void ValidateSweepSpec(const SweepSpec& spec) {
  if (spec.configs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sweep has no configuration");
  }
  if (spec.heuristics.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sweep has no heuristic");
  }
  if (spec.instances < 1) {
    throw Error(ErrorCode::kInvalidArgument, "instances must be >= 1");
  }
  CheckGrid(spec.grid);
  for (HeuristicId h : spec.heuristics) {
    if (!ModeFits(spec.mode, h)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(HeuristicName(h)) +
                      " does not take the sweep's kind of bound");
    }
  }
  for (const ExperimentConfig& c : spec.configs) {
    if (c.stages < 1 || c.processors < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "configurations need n >= 1 and p >= 1");
    }
  }
}

std::vector<SweepRow> RunSweep(const SweepSpec& spec,
                               std::vector<std::string>* warnings) {
  ValidateSweepSpec(spec);
  struct Item {
    ExperimentConfig config;
  };
  std::vector<Item> items;
  for (const ExperimentConfig& base : spec.configs) {
    for (int k = 0; k < spec.instances; ++k) {
      ExperimentConfig c = base;
      c.seed = base.seed + static_cast<std::uint64_t>(k);
      items.push_back({c});
    }
  }
  std::vector<std::vector<SweepRow>> blocks(items.size());
  std::vector<std::vector<std::string>> block_warnings(items.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < items.size(); i = next++) {
      const Instance inst = Generate(items[i].config);
      blocks[i] = RunInstance(items[i].config, inst, spec, &block_warnings[i]);
    }
  };
  const int jobs = std::clamp(spec.jobs, 1, 256);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  std::vector<SweepRow> rows;
  for (size_t i = 0; i < items.size(); ++i) {
    std::move(blocks[i].begin(), blocks[i].end(), std::back_inserter(rows));
    if (warnings != nullptr) {
      warnings->insert(warnings->end(), block_warnings[i].begin(),
                       block_warnings[i].end());
    }
  }
  return rows;
}

std::string FormatSweepCsv(const std::vector<SweepRow>& rows) {
  std::string out =
      "family,n,p,seed,heuristic,mode,threshold,feasible,period,latency,"
      "wall_ms\n";
  for (const SweepRow& r : rows) {
    out += FamilyName(r.config.family);
    out += "," + std::to_string(r.config.stages);
    out += "," + std::to_string(r.config.processors);
    out += "," + std::to_string(r.config.seed);
    out += ",";
    out += HeuristicName(r.heuristic);
    out += ",";
    out += TargetKindName(r.mode);
    out += "," + Fmt6(r.threshold);
    out += r.feasible ? ",1," : ",0,";
    if (r.feasible) out += Fmt6(r.period);
    out += ",";
    if (r.feasible) out += Fmt6(r.latency);
    out += ",";
    if (r.wall_ms) out += Fmt6(*r.wall_ms);
    out += "\n";
  }
  return out;
}

SweepSpec ParseSweepSpec(std::string_view text) {
  std::map<std::string, std::vector<std::string>> kv;
  size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    const size_t eq = line.find('=');
    std::vector<std::string> words;
    auto split = [&](const std::string& s) {
      std::vector<std::string> out;
      size_t i = 0;
      while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
      }
      return out;
    };
    if (eq == std::string::npos) {
      if (!split(line).empty()) {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) + ": expected key = value");
      }
      continue;
    }
    std::vector<std::string> key = split(line.substr(0, eq));
    if (key.size() != 1) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": bad key");
    }
    kv[key[0]] = split(line.substr(eq + 1));
  }

  auto need = [&](const std::string& key) -> const std::vector<std::string>& {
    auto it = kv.find(key);
    if (it == kv.end() || it->second.empty()) {
      throw Error(ErrorCode::kParseError, "missing '" + key + "'");
    }
    return it->second;
  };
  for (const auto& [key, _] : kv) {
    if (key != "family" && key != "n" && key != "p" && key != "seed" &&
        key != "instances" && key != "mode" && key != "heuristics" &&
        key != "grid" && key != "jobs") {
      throw Error(ErrorCode::kParseError, "unknown key '" + key + "'");
    }
  }

  SweepSpec spec;
  std::vector<Family> families;
  for (const std::string& f : need("family")) families.push_back(ParseFamily(f));
  std::vector<int> ns, ps;
  for (const std::string& w : need("n")) ns.push_back(static_cast<int>(ParseInteger(w, "n")));
  for (const std::string& w : need("p")) ps.push_back(static_cast<int>(ParseInteger(w, "p")));
  std::uint64_t seed = 0;
  if (kv.count("seed")) {
    seed = static_cast<std::uint64_t>(ParseInteger(need("seed").front(), "seed"));
  }
  for (Family f : families) {
    for (int n : ns) {
      for (int p : ps) spec.configs.push_back({f, n, p, seed});
    }
  }
  if (kv.count("instances")) {
    spec.instances = static_cast<int>(ParseInteger(need("instances").front(), "instances"));
  }
  if (kv.count("jobs")) {
    spec.jobs = static_cast<int>(ParseInteger(need("jobs").front(), "jobs"));
  }
  if (kv.count("mode")) spec.mode = ParseSweepMode(need("mode").front());
  const auto& hs = need("heuristics");
  if (hs.size() == 1 && hs[0] == "all") {
    for (HeuristicId h : AllHeuristics()) {
      if (ModeFits(spec.mode, h)) spec.heuristics.push_back(h);
    }
  } else {
    for (const std::string& h : hs) spec.heuristics.push_back(ParseHeuristic(h));
  }
  const auto& grid = need("grid");
  if (grid[0] == "geometric") {
    if (grid.size() != 4) {
      throw Error(ErrorCode::kParseError,
                  "'grid = geometric <min> <max> <count>'");
    }
    std::vector<double> lohi = ParseReals(grid, 1, "grid");
    spec.grid = GeometricGrid(lohi[0], lohi[1],
                              static_cast<int>(std::lround(lohi[2])));
  } else {
    spec.grid = ParseReals(grid, 0, "grid");
  }
  ValidateSweepSpec(spec);
  return spec;
}

std::vector<double> DefaultThresholdGrid(const PipelineApp& app,
                                         const Platform& platform) {
  const double optimal = OptimalLatency(app, platform).value;
  return GeometricGrid(0.01 * optimal, 10.0 * optimal, 64);
}

InstanceThreshold FailureThresholdForInstance(const PipelineApp& app,
                                              const Platform& platform,
                                              HeuristicId heuristic,
                                              const std::vector<double>& grid) {
  CheckGrid(grid);
  const TargetKind kind = HeuristicTargetKind(heuristic);
  InstanceThreshold out;
  bool any_failure = false;
  bool seen_feasible = false;
  double largest_failure = 0.0;
  for (double t : grid) {
    bool ok = true;
    try {
      RunHeuristic(heuristic, app, platform, {kind, t});
    } catch (const InfeasibleError&) {
      ok = false;
    }
    if (ok) {
      seen_feasible = true;
    } else {
      if (seen_feasible) out.monotone = false;
      any_failure = true;
      largest_failure = t;
    }
  }
  if (!any_failure) {
    out.status = ThresholdStatus::kNeverFails;
    out.value = grid.front();
  } else if (largest_failure == grid.back()) {
    out.status = ThresholdStatus::kAlwaysFails;
    out.value = grid.back();
  } else {
    out.status = ThresholdStatus::kBracketed;
    out.value = largest_failure;
  }
  return out;
}

FailureThreshold ComputeFailureThreshold(const ExperimentConfig& config,
                                         HeuristicId heuristic,
                                         TargetKind mode,
                                         const std::vector<double>& grid,
                                         int instances) {
  if (HeuristicTargetKind(heuristic) != mode) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(HeuristicName(heuristic)) + " takes a fixed " +
                    std::string(TargetKindName(HeuristicTargetKind(heuristic))) +
                    " bound");
  }
  if (instances < 1) {
    throw Error(ErrorCode::kInvalidArgument, "instances must be >= 1");
  }
  FailureThreshold out;
  double sum = 0.0;
  int never = 0;
  int always = 0;
  for (int k = 0; k < instances; ++k) {
    ExperimentConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(k);
    const Instance inst = Generate(c);
    const std::vector<double> g =
        grid.empty() ? DefaultThresholdGrid(inst.app, inst.platform) : grid;
    InstanceThreshold t =
        FailureThresholdForInstance(inst.app, inst.platform, heuristic, g);
    t.seed = c.seed;
    if (t.status == ThresholdStatus::kNeverFails) ++never;
    if (t.status == ThresholdStatus::kAlwaysFails) ++always;
    if (t.status != ThresholdStatus::kAlwaysFails) {
      sum += t.value;
      ++out.counted;
    }
    out.per_instance.push_back(t);
  }
  if (never == instances) {
    throw Error(ErrorCode::kNeverFails,
                std::string(HeuristicName(heuristic)) +
                    " succeeds at every grid value; lower the grid");
  }
  if (always == instances) {
    throw Error(ErrorCode::kAlwaysFails,
                std::string(HeuristicName(heuristic)) +
                    " fails at every grid value; raise the grid");
  }
  out.mean = sum / out.counted;
  return out;
}

std::vector<PlotSeries> AggregatePlotData(const std::vector<SweepRow>& rows) {
  using Key = std::tuple<Family, int, int, HeuristicId>;
  std::vector<Key> order;
  std::map<Key, std::map<double, std::pair<PlotPoint, double>>> acc;
  std::map<Key, TargetKind> modes;
  for (const SweepRow& r : rows) {
    const Key key{r.config.family, r.config.stages, r.config.processors,
                  r.heuristic};
    if (acc.find(key) == acc.end()) order.push_back(key);
    modes[key] = r.mode;
    auto& [pt, sum] = acc[key][r.threshold];
    pt.threshold = r.threshold;
    ++pt.total;
    if (r.feasible) {
      ++pt.feasible;
      sum += r.mode == TargetKind::kFixedPeriod ? r.latency : r.period;
    }
  }
  std::vector<PlotSeries> out;
  for (const Key& key : order) {
    PlotSeries s;
    std::tie(s.family, s.stages, s.processors, s.heuristic) = key;
    s.mode = modes[key];
    for (auto& [t, entry] : acc[key]) {
      PlotPoint pt = entry.first;
      if (pt.feasible > 0) pt.mean_achieved = entry.second / pt.feasible;
      s.points.push_back(pt);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string PlotSeriesFileName(const PlotSeries& series) {
  return std::string(FamilyName(series.family)) + "_n" +
         std::to_string(series.stages) + "_p" +
         std::to_string(series.processors) + "_" +
         std::string(HeuristicName(series.heuristic)) + ".dat";
}

std::string FormatPlotSeries(const PlotSeries& series) {
  const bool by_period = series.mode == TargetKind::kFixedPeriod;
  std::string out = std::string("# ") + (by_period ? "period" : "latency") +
                    " mean_" + (by_period ? "latency" : "period") +
                    " feasible total\n";
  for (const PlotPoint& pt : series.points) {
    out += Fmt6(pt.threshold) + " " +
           (pt.mean_achieved ? Fmt6(*pt.mean_achieved) : std::string("nan")) +
           " " + std::to_string(pt.feasible) + " " + std::to_string(pt.total) +
           "\n";
  }
  return out;
}

}  // namespace pipemap

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

#ifndef PIPEMAP_TESTS_PROPERTY_CHECKS_H_
#define PIPEMAP_TESTS_PROPERTY_CHECKS_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "pipemap/error.h"
#include "pipemap/heuristics.h"
#include "pipemap/model.h"
#include "pipemap/oracle.h"
#include "test_util.h"

// Randomized checks of the library's invariants. Shared by the unit tests
// and the acceptance gate; each returns how many cases ran and the first
// counterexample.
namespace pipemap::testing {

struct PropertyResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
  void Fail(int index, const std::string& what) {
    if (failures++ == 0) {
      first_failure = "case " + std::to_string(index) + ": " + what;
    }
  }
};

inline std::string Describe(const PipelineApp& app, const Platform& pf) {
  std::ostringstream os;
  os.precision(17);
  os << "w=[";
  for (double w : app.work) os << w << ' ';
  os << "] delta=[";
  for (double d : app.delta) os << d << ' ';
  os << "] s=[";
  for (double s : pf.speeds) os << s << ' ';
  os << "] b=" << pf.bandwidth;
  return os.str();
}

inline BicriteriaTarget RandomTarget(HeuristicId id, const PipelineApp& app,
                                     const Platform& pf, std::mt19937_64& rng) {
  const double l_opt = OptimalLatency(app, pf).value;
  if (HeuristicTargetKind(id) == TargetKind::kFixedPeriod) {
    return {TargetKind::kFixedPeriod,
            l_opt * std::uniform_real_distribution<double>(0.05, 1.2)(rng)};
  }
  return {TargetKind::kFixedLatency,
          l_opt * std::uniform_real_distribution<double>(0.9, 3.0)(rng)};
}

// Scaling w and delta by c scales period and latency by c. Powers of two
// scale every intermediate exactly, so heuristics given a scaled target must
// also return the same mapping.
inline PropertyResult CheckScaleInvariance(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  PropertyResult res;
  for (int t = 0; t < cases; ++t, ++res.cases) {
    auto [app, pf] = RandomInstance(rng, {.max_stages = 10, .max_procs = 6});
    const IntervalMapping map = RandomMapping(app.stages(), pf.processors(), rng);
    const bool exact = t % 2 == 0;
    const double c =
        exact ? std::ldexp(1.0, std::uniform_int_distribution<int>(-20, 20)(rng))
              : std::uniform_real_distribution<double>(0.001, 1000.0)(rng);
    PipelineApp scaled = app;
    for (double& w : scaled.work) w *= c;
    for (double& d : scaled.delta) d *= c;
    const CostReport a = Evaluate(app, pf, map);
    const CostReport b = Evaluate(scaled, pf, map);
    const bool same = exact ? (b.period == c * a.period && b.latency == c * a.latency)
                            : (RelClose(b.period, c * a.period, 1e-12) &&
                               RelClose(b.latency, c * a.latency, 1e-12));
    if (!same) {
      res.Fail(t, "cost scaling with c=" + std::to_string(c) + " on " +
                      Describe(app, pf));
      continue;
    }
    if (!exact) continue;
    const HeuristicId id = AllHeuristics()[t / 2 % AllHeuristics().size()];
    const BicriteriaTarget target = RandomTarget(id, app, pf, rng);
    IntervalMapping m1, m2;
    bool f1 = true, f2 = true;
    try {
      m1 = RunHeuristic(id, app, pf, target);
    } catch (const InfeasibleError&) {
      f1 = false;
    }
    try {
      m2 = RunHeuristic(id, scaled, pf, {target.kind, target.value * c});
    } catch (const InfeasibleError&) {
      f2 = false;
    }
    if (f1 != f2 || m1 != m2) {
      res.Fail(t, std::string(HeuristicName(id)) + " changed under scaling by " +
                      std::to_string(c) + " on " + Describe(app, pf));
    }
  }
  return res;
}

// Every split accepted by h1/h2a/h2b strictly lowers the cycle time of the
// interval it splits, and never raises the period.
inline PropertyResult CheckBottleneckDecrease(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  PropertyResult res;
  const HeuristicId ids[] = {HeuristicId::kSpMonoP, HeuristicId::kExplo3Mono,
                             HeuristicId::kExplo3Bi};
  for (int t = 0; t < cases; ++t, ++res.cases) {
    auto [app, pf] = RandomInstance(
        rng, {.max_stages = 20, .max_procs = 10, .zero_delta = t % 5 == 0,
              .integer_values = t % 3 == 0});
    const HeuristicId id = ids[t % 3];
    HeuristicTrace trace;
    try {
      // An unreachable target runs the loop to exhaustion.
      RunHeuristic(id, app, pf, {TargetKind::kFixedPeriod, 1e-300}, &trace);
    } catch (const InfeasibleError&) {
    }
    if (static_cast<int>(trace.steps.size()) > pf.processors() - 1) {
      res.Fail(t, "more splits than spare processors");
    }
    for (size_t k = 0; k < trace.steps.size(); ++k) {
      const SplitStep& s = trace.steps[k];
      if (!(s.max_cycle_after < s.cycle_before) ||
          s.after.period > s.before.period ||
          (k > 0 && s.before.period != trace.steps[k - 1].after.period)) {
        res.Fail(t, std::string(HeuristicName(id)) + " step " +
                        std::to_string(k) + " did not improve on " +
                        Describe(app, pf));
        break;
      }
    }
  }
  return res;
}

// Latency-bounded runs only trade latency for period.
inline PropertyResult CheckLatencyBoundedTrace(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  PropertyResult res;
  for (int t = 0; t < cases; ++t, ++res.cases) {
    auto [app, pf] = RandomInstance(rng, {.max_stages = 20, .max_procs = 10});
    const HeuristicId id = t % 2 == 0 ? HeuristicId::kSpMonoL : HeuristicId::kSpBiL;
    const double bound = OptimalLatency(app, pf).value *
                         std::uniform_real_distribution<double>(1.0, 3.0)(rng);
    HeuristicTrace trace;
    const IntervalMapping map = RunHeuristic(id, app, pf,
                                             {TargetKind::kFixedLatency, bound}, &trace);
    bool bad = !WithinBound(Evaluate(app, pf, map).latency, bound);
    for (const SplitStep& s : trace.steps) {
      bad = bad || s.after.period > s.before.period ||
            s.after.latency < s.before.latency * (1 - 1e-12) ||
            !WithinBound(s.after.latency, bound);
    }
    if (bad) res.Fail(t, std::string(HeuristicName(id)) + " on " + Describe(app, pf));
  }
  return res;
}

// Front points are mutually non-dominated, and no mapping found by an
// independent enumeration beats any of them.
inline PropertyResult CheckParetoNonDomination(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  PropertyResult res;
  for (int t = 0; t < cases; ++t, ++res.cases) {
    auto [app, pf] = RandomInstance(
        rng, {.max_stages = 6, .max_procs = 4, .integer_values = t % 2 == 0});
    const ParetoFront front = ComputeParetoFront(app, pf);
    bool bad = front.points.empty();
    for (size_t i = 0; i < front.points.size() && !bad; ++i) {
      for (size_t j = 0; j < front.points.size(); ++j) {
        const ParetoPoint& a = front.points[i];
        const ParetoPoint& b = front.points[j];
        if (i != j && b.period <= a.period && b.latency <= a.latency) bad = true;
      }
    }
    ForAllMappings(app.stages(), pf.processors(), [&](const IntervalMapping& m) {
      const CostReport r = EvaluateUnchecked(app, pf, m);
      bool covered = false;
      for (const ParetoPoint& pt : front.points) {
        if (pt.period <= r.period && pt.latency <= r.latency) covered = true;
        if ((r.period < pt.period && r.latency <= pt.latency) ||
            (r.period <= pt.period && r.latency < pt.latency)) {
          bad = true;
        }
      }
      bad = bad || !covered;
    });
    if (!bad && front.points.back().latency != OptimalLatency(app, pf).value) {
      bad = true;
    }
    if (bad) res.Fail(t, "front of " + Describe(app, pf));
  }
  return res;
}

// A yes answer at K stays yes for every larger K, and with no communication
// the smallest yes coincides with the exact-p minimum period.
inline PropertyResult CheckDecisionMonotonicity(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  PropertyResult res;
  for (int t = 0; t < cases; ++t, ++res.cases) {
    const int p = std::uniform_int_distribution<int>(1, 4)(rng);
    const int n = std::uniform_int_distribution<int>(p, 8)(rng);
    Hetero1DInstance inst;
    auto value = [&] {
      return t % 2 == 0
                 ? static_cast<double>(std::uniform_int_distribution<int>(1, 9)(rng))
                 : std::uniform_real_distribution<double>(0.5, 9.0)(rng);
    };
    for (int i = 0; i < n; ++i) inst.a.push_back(value());
    for (int k = 0; k < p; ++k) inst.s.push_back(value());

    PipelineApp app{inst.a, std::vector<double>(n + 1, 0.0)};
    Platform pf{inst.s, 1.0};
    OracleOptions o;
    o.exact_intervals = p;
    const double opt = BruteForceMinPeriod(app, pf, o).value;

    bool bad = false;
    Hetero1DInstance probe = inst;
    probe.bound = opt;
    bad = bad || !DecideHetero1DPartition(probe).feasible;
    probe.bound = opt * (1 - 1e-9);
    bad = bad || DecideHetero1DPartition(probe).feasible;
    bool seen_yes = false;
    for (int k = 0; k < 8; ++k) {
      probe.bound = opt * std::ldexp(1.0, k - 4) * 1.1;
      const bool yes = DecideHetero1DPartition(probe).feasible;
      bad = bad || (seen_yes && !yes);
      seen_yes = seen_yes || yes;
    }
    if (bad) res.Fail(t, "decision not monotone around optimum " + std::to_string(opt));
  }
  return res;
}

// Merging two adjacent intervals onto the faster of their processors never
// raises latency; latency is bounded below by every interval's compute time
// and by the single-interval optimum.
inline PropertyResult CheckLatencyBounds(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  PropertyResult res;
  for (int t = 0; t < cases; ++t, ++res.cases) {
    auto [app, pf] = RandomInstance(rng, {.min_stages = 2, .max_stages = 12,
                                          .min_procs = 2, .max_procs = 8});
    const IntervalMapping map = RandomMapping(app.stages(), pf.processors(), rng);
    const CostReport r = Evaluate(app, pf, map);
    bool bad = r.latency < OptimalLatency(app, pf).value * (1 - 1e-12);
    for (int j = 0; j < map.size(); ++j) {
      const double compute =
          IntervalWork(app, map.intervals[j]) / pf.speeds[map.alloc[j] - 1];
      bad = bad || r.latency < compute;
    }
    if (map.size() >= 2) {
      const int j = std::uniform_int_distribution<int>(0, map.size() - 2)(rng);
      IntervalMapping merged = map;
      const int u = map.alloc[j];
      const int v = map.alloc[j + 1];
      merged.intervals[j].last = map.intervals[j + 1].last;
      merged.alloc[j] = pf.speeds[v - 1] > pf.speeds[u - 1] ? v : u;
      merged.intervals.erase(merged.intervals.begin() + j + 1);
      merged.alloc.erase(merged.alloc.begin() + j + 1);
      bad = bad || !WithinBound(Evaluate(app, pf, merged).latency, r.latency);
    }
    if (bad) res.Fail(t, "latency bounds on " + Describe(app, pf));
  }
  return res;
}

// Returned mappings validate and satisfy the bound; h4/h5 only refuse below
// the optimal latency.
inline PropertyResult CheckHeuristicHonesty(std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  PropertyResult res;
  for (int t = 0; t < cases; ++t, ++res.cases) {
    auto [app, pf] = RandomInstance(rng, {.max_stages = 16, .max_procs = 8});
    const HeuristicId id = AllHeuristics()[t % AllHeuristics().size()];
    BicriteriaTarget target = RandomTarget(id, app, pf, rng);
    if (target.kind == TargetKind::kFixedLatency && t % 4 == 1) target.value *= 0.8;
    try {
      const IntervalMapping m = RunHeuristic(id, app, pf, target);
      const CostReport r = Evaluate(app, pf, m);
      const double got = target.kind == TargetKind::kFixedPeriod ? r.period : r.latency;
      if (!WithinBound(got, target.value)) {
        res.Fail(t, std::string(HeuristicName(id)) + " broke its bound");
      }
    } catch (const InfeasibleError&) {
      if (target.kind == TargetKind::kFixedLatency &&
          WithinBound(OptimalLatency(app, pf).value, target.value)) {
        res.Fail(t, std::string(HeuristicName(id)) + " refused a reachable bound");
      }
    }
  }
  return res;
}

}  // namespace pipemap::testing

#endif  // PIPEMAP_TESTS_PROPERTY_CHECKS_H_

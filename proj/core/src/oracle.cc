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

#include "pipemap/oracle.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "pipemap/error.h"

namespace pipemap {
namespace {

void CheckSize(const PipelineApp& app, const Platform& platform,
               const OracleOptions& options) {
  ValidateApp(app);
  ValidatePlatform(platform);
  if (options.force) return;
  if (app.stages() > options.max_stages ||
      platform.processors() > options.max_processors) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "exhaustive search limited to n <= " +
                    std::to_string(options.max_stages) + " and p <= " +
                    std::to_string(options.max_processors) + " (got n = " +
                    std::to_string(app.stages()) + ", p = " +
                    std::to_string(platform.processors()) +
                    "); use force to override");
  }
}

// Depth-first walk over all interval mappings in the documented order.
// Per-interval costs are tabulated with the same arithmetic as
// EvaluateUnchecked so that (period, latency) are bit-identical to it.
// TODO: split the first cut position across threads; results must stay
// independent of the thread count, so merge per-thread bests in enumeration
// order.
class MappingEnumerator {
 public:
  MappingEnumerator(const PipelineApp& app, const Platform& platform,
                    const OracleOptions& options)
      : n_(app.stages()),
        p_(platform.processors()),
        out_(app.delta.back() / platform.bandwidth),
        term_(static_cast<size_t>(n_) * n_ * p_),
        cycle_(term_.size()) {
    for (int d = 1; d <= n_; ++d) {
      for (int e = d; e <= n_; ++e) {
        for (int u = 1; u <= p_; ++u) {
          const size_t k = Index(d, e, u);
          term_[k] = IntervalLatencyTerm(app, platform, {d, e}, u);
          cycle_[k] = term_[k] + app.delta[e] / platform.bandwidth;
        }
      }
    }
    const int top = std::min(n_, p_);
    if (options.exact_intervals > 0) {
      min_m_ = max_m_ = options.exact_intervals;
      if (options.exact_intervals > top) max_m_ = 0;
    } else {
      min_m_ = 1;
      max_m_ = top;
    }
  }

  // visit(period, latency) is called once per mapping; Current() returns the
  // mapping being visited.
  template <typename Visit>
  void Run(Visit&& visit) {
    used_.assign(p_ + 1, false);
    for (int m = min_m_; m <= max_m_; ++m) {
      parts_.clear();
      Partition(1, m, visit);
    }
  }

  IntervalMapping Current() const {
    return IntervalMapping{parts_, procs_};
  }

 private:
  size_t Index(int d, int e, int u) const {
    return (static_cast<size_t>(d - 1) * n_ + (e - 1)) * p_ + (u - 1);
  }

  template <typename Visit>
  void Partition(int first, int m, Visit& visit) {
    const int placed = static_cast<int>(parts_.size());
    if (placed == m - 1) {
      parts_.push_back({first, n_});
      procs_.assign(m, 0);
      Assign(0, 0.0, 0.0, visit);
      parts_.pop_back();
      return;
    }
    const int remaining = m - placed - 1;
    for (int e = first; e <= n_ - remaining; ++e) {
      parts_.push_back({first, e});
      Partition(e + 1, m, visit);
      parts_.pop_back();
    }
  }

  template <typename Visit>
  void Assign(size_t k, double period, double latency, Visit& visit) {
    if (k == parts_.size()) {
      visit(period, latency + out_);
      return;
    }
    const Interval iv = parts_[k];
    for (int u = 1; u <= p_; ++u) {
      if (used_[u]) continue;
      used_[u] = true;
      procs_[k] = u;
      const size_t idx = Index(iv.first, iv.last, u);
      const double cycle = cycle_[idx];
      Assign(k + 1, (k == 0 || cycle > period) ? cycle : period,
             latency + term_[idx], visit);
      used_[u] = false;
    }
  }

  int n_;
  int p_;
  double out_;
  std::vector<double> term_;
  std::vector<double> cycle_;
  int min_m_ = 1;
  int max_m_ = 1;
  std::vector<Interval> parts_;
  std::vector<int> procs_;
  std::vector<bool> used_;
};

enum class Criterion { kPeriod, kLatency };

MappingValue BruteForceMin(const PipelineApp& app, const Platform& platform,
                           const OracleOptions& options, Criterion criterion) {
  CheckSize(app, platform, options);
  MappingEnumerator walk(app, platform, options);
  bool found = false;
  MappingValue best;
  walk.Run([&](double period, double latency) {
    const double v = criterion == Criterion::kPeriod ? period : latency;
    if (!found || v < best.value) {
      found = true;
      best.value = v;
      best.mapping = walk.Current();
    }
  });
  if (!found) {
    throw Error(ErrorCode::kInvalidArgument,
                "no mapping with exactly " +
                    std::to_string(options.exact_intervals) + " intervals");
  }
  return best;
}

struct FrontEntry {
  double latency;
  IntervalMapping witness;
};

}  // namespace

MappingValue OptimalLatency(const PipelineApp& app, const Platform& platform) {
  ValidateApp(app);
  ValidatePlatform(platform);
  MappingValue out;
  out.mapping = SingleIntervalMapping(app.stages(), FastestProcessor(platform));
  out.value = EvaluateUnchecked(app, platform, out.mapping).latency;
  return out;
}

MappingValue BruteForceMinPeriod(const PipelineApp& app,
                                 const Platform& platform,
                                 const OracleOptions& options) {
  return BruteForceMin(app, platform, options, Criterion::kPeriod);
}

MappingValue BruteForceMinLatency(const PipelineApp& app,
                                  const Platform& platform,
                                  const OracleOptions& options) {
  return BruteForceMin(app, platform, options, Criterion::kLatency);
}

ParetoFront ComputeParetoFront(const PipelineApp& app, const Platform& platform,
                               const OracleOptions& options) {
  CheckSize(app, platform, options);
  MappingEnumerator walk(app, platform, options);
  std::map<double, FrontEntry> front;
  walk.Run([&](double period, double latency) {
    auto next = front.upper_bound(period);
    if (next != front.begin() && std::prev(next)->second.latency <= latency) {
      return;  // dominated or equal to an earlier point
    }
    auto it = front.lower_bound(period);
    while (it != front.end() && it->second.latency >= latency) {
      it = front.erase(it);
    }
    front.emplace(period, FrontEntry{latency, walk.Current()});
  });
  ParetoFront out;
  out.points.reserve(front.size());
  for (auto& [period, entry] : front) {
    out.points.push_back({period, entry.latency, std::move(entry.witness)});
  }
  return out;
}

MappingValue MinLatencyGivenPeriod(const ParetoFront& front,
                                   double period_bound) {
  const ParetoPoint* best = nullptr;
  for (const ParetoPoint& pt : front.points) {
    if (WithinBound(pt.period, period_bound)) best = &pt;
  }
  if (best == nullptr) {
    const double lowest =
        front.points.empty() ? std::numeric_limits<double>::infinity()
                             : front.points.front().period;
    throw InfeasibleError(lowest, "no mapping has period <= " +
                                      std::to_string(period_bound));
  }
  return {best->latency, best->witness};
}

MappingValue MinPeriodGivenLatency(const ParetoFront& front,
                                   double latency_bound) {
  for (const ParetoPoint& pt : front.points) {
    if (WithinBound(pt.latency, latency_bound)) {
      return {pt.period, pt.witness};
    }
  }
  const double lowest = front.points.empty()
                            ? std::numeric_limits<double>::infinity()
                            : front.points.back().latency;
  throw InfeasibleError(lowest, "no mapping has latency <= " +
                                    std::to_string(latency_bound));
}

MappingValue MinLatencyGivenPeriod(const PipelineApp& app,
                                   const Platform& platform,
                                   double period_bound,
                                   const OracleOptions& options) {
  return MinLatencyGivenPeriod(ComputeParetoFront(app, platform, options),
                               period_bound);
}

MappingValue MinPeriodGivenLatency(const PipelineApp& app,
                                   const Platform& platform,
                                   double latency_bound,
                                   const OracleOptions& options) {
  return MinPeriodGivenLatency(ComputeParetoFront(app, platform, options),
                               latency_bound);
}

Hetero1DDecision DecideHetero1DPartition(const Hetero1DInstance& instance,
                                         const Hetero1DOptions& options) {
  const int n = static_cast<int>(instance.a.size());
  const int p = static_cast<int>(instance.s.size());
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (n == 0 || p == 0 || !positive(instance.bound) ||
      !std::all_of(instance.a.begin(), instance.a.end(), positive) ||
      !std::all_of(instance.s.begin(), instance.s.end(), positive)) {
    throw Error(ErrorCode::kInvalidArgument,
                "partition instance needs non-empty positive a, s and bound");
  }
  if (!options.force && (n > options.max_elements || p > options.max_values)) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "partition search limited to n <= " +
                    std::to_string(options.max_elements) + " and p <= " +
                    std::to_string(options.max_values));
  }
  Hetero1DDecision decision;
  if (n < p) return decision;

  std::vector<int> value_order(p);
  std::iota(value_order.begin(), value_order.end(), 0);
  std::stable_sort(value_order.begin(), value_order.end(),
                   [&](int x, int y) { return instance.s[x] < instance.s[y]; });
  const double s_max = instance.s[value_order.back()];
  const double bound = instance.bound;

  std::vector<Interval> parts;
  std::vector<double> loads;
  std::vector<int> part_order(p);

  // Loads only accept values at least load / bound, a nested family of sets,
  // so pairing loads and values in sorted order finds a matching iff one
  // exists.
  auto try_match = [&]() -> bool {
    std::iota(part_order.begin(), part_order.end(), 0);
    std::stable_sort(part_order.begin(), part_order.end(),
                     [&](int x, int y) { return loads[x] < loads[y]; });
    double worst = 0.0;
    for (int i = 0; i < p; ++i) {
      const double ratio = loads[part_order[i]] / instance.s[value_order[i]];
      if (ratio > bound) return false;
      worst = std::max(worst, ratio);
    }
    Hetero1DWitness w;
    w.parts = parts;
    w.sigma.assign(p, 0);
    for (int i = 0; i < p; ++i) w.sigma[part_order[i]] = value_order[i] + 1;
    w.max_ratio = worst;
    decision.feasible = true;
    decision.witness = std::move(w);
    return true;
  };

  auto search = [&](auto& self, int first) -> bool {
    const int placed = static_cast<int>(parts.size());
    const int remaining = p - placed - 1;
    if (remaining == 0) {
      double load = 0.0;
      for (int i = first; i <= n; ++i) load += instance.a[i - 1];
      if (load / s_max > bound) return false;
      parts.push_back({first, n});
      loads.push_back(load);
      const bool ok = try_match();
      parts.pop_back();
      loads.pop_back();
      return ok;
    }
    double load = 0.0;
    for (int e = first; e <= n - remaining; ++e) {
      load += instance.a[e - 1];
      if (load / s_max > bound) break;
      parts.push_back({first, e});
      loads.push_back(load);
      const bool ok = self(self, e + 1);
      parts.pop_back();
      loads.pop_back();
      if (ok) return true;
    }
    return false;
  };
  search(search, 1);
  return decision;
}

}  // namespace pipemap

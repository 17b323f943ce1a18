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

#include "pipemap/gen.h"

#include <algorithm>
#include <cctype>
#include <string>

#include "pipemap/error.h"
#include "pipemap/rng.h"

namespace pipemap {

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kE1:
      return "e1";
    case Family::kE2:
      return "e2";
    case Family::kE3:
      return "e3";
    case Family::kE4:
      return "e4";
  }
  return "?";
}

Family ParseFamily(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (Family f : {Family::kE1, Family::kE2, Family::kE3, Family::kE4}) {
    if (lower == FamilyName(f)) return f;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown family '" + std::string(name) + "'");
}

Instance Generate(const ExperimentConfig& config) {
  if (config.stages < 1 || config.processors < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "need at least one stage and one processor");
  }
  Xorshift64Star rng(config.seed);
  const int n = config.stages;
  Instance inst;
  inst.app.work.resize(n);
  for (double& w : inst.app.work) {
    switch (config.family) {
      case Family::kE1:
      case Family::kE2:
        w = static_cast<double>(rng.UniformInt(1, 20));
        break;
      case Family::kE3:
        w = static_cast<double>(rng.UniformInt(10, 1000));
        break;
      case Family::kE4:
        w = rng.UniformReal(0.01, 10.0);
        break;
    }
  }
  inst.app.delta.resize(n + 1);
  for (double& d : inst.app.delta) {
    switch (config.family) {
      case Family::kE1:
        d = 10.0;
        break;
      case Family::kE2:
        d = static_cast<double>(rng.UniformInt(1, 100));
        break;
      case Family::kE3:
      case Family::kE4:
        d = static_cast<double>(rng.UniformInt(1, 20));
        break;
    }
  }
  inst.platform.bandwidth = kGeneratedBandwidth;
  inst.platform.speeds.resize(config.processors);
  for (double& s : inst.platform.speeds) {
    s = static_cast<double>(rng.UniformInt(1, 20));
  }
  return inst;
}

std::vector<Instance> GenerateBatch(const ExperimentConfig& config, int count) {
  std::vector<Instance> out;
  out.reserve(std::max(count, 0));
  for (int k = 0; k < count; ++k) {
    ExperimentConfig c = config;
    c.seed = config.seed + static_cast<std::uint64_t>(k);
    out.push_back(Generate(c));
  }
  return out;
}

std::string InstanceFileName(const ExperimentConfig& config) {
  return std::string(FamilyName(config.family)) + "_n" +
         std::to_string(config.stages) + "_p" +
         std::to_string(config.processors) + "_s" +
         std::to_string(config.seed) + ".pipe";
}

int NmwtsInstance::MaxValue() const {
  int best = 0;
  for (const auto* v : {&x, &y, &z}) {
    for (int e : *v) best = std::max(best, e);
  }
  return best;
}

Hetero1DInstance BuildReductionInstance(const NmwtsInstance& nmwts) {
  const int m = nmwts.size();
  if (m < 1 || static_cast<int>(nmwts.y.size()) != m ||
      static_cast<int>(nmwts.z.size()) != m) {
    throw Error(ErrorCode::kInvalidArgument,
                "matching instance needs three lists of equal positive size");
  }
  for (const auto* v : {&nmwts.x, &nmwts.y, &nmwts.z}) {
    for (int e : *v) {
      if (e < 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "matching values must be at least 1");
      }
    }
  }
  const int big_m = nmwts.MaxValue();
  const double b = 2.0 * big_m;
  const double c = 5.0 * big_m;
  const double d = 7.0 * big_m;

  Hetero1DInstance out;
  out.a.reserve(static_cast<size_t>(big_m + 3) * m);
  for (int i = 0; i < m; ++i) {
    out.a.push_back(b + nmwts.x[i]);
    out.a.insert(out.a.end(), big_m, 1.0);
    out.a.push_back(c);
    out.a.push_back(d);
  }
  out.s.resize(3 * m);
  for (int i = 0; i < m; ++i) {
    out.s[i] = b + nmwts.z[i];
    out.s[m + i] = c + big_m - nmwts.y[i];
    out.s[2 * m + i] = d;
  }
  out.bound = 1.0;
  return out;
}

}  // namespace pipemap

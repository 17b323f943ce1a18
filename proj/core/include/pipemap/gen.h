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

#ifndef PIPEMAP_GEN_H_
#define PIPEMAP_GEN_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pipemap/instance_io.h"
#include "pipemap/oracle.h"

namespace pipemap {

// Instance families. All use bandwidth 10 and integer speeds in [1, 20].
//   E1: delta_i = 10,            w_i integer in [1, 20]
//   E2: delta_i integer [1, 100], w_i integer in [1, 20]
//   E3: delta_i integer [1, 20],  w_i integer in [10, 1000]
//   E4: delta_i integer [1, 20],  w_i real in [0.01, 10)
enum class Family { kE1, kE2, kE3, kE4 };

std::string_view FamilyName(Family family);  // "e1" .. "e4"
Family ParseFamily(std::string_view name);   // case-insensitive

struct ExperimentConfig {
  Family family = Family::kE1;
  int stages = 1;
  int processors = 1;
  std::uint64_t seed = 0;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

inline constexpr double kGeneratedBandwidth = 10.0;

// Deterministic in the config. One Xorshift64Star stream seeded with
// config.seed draws, in order, w_1..w_n, then delta_0..delta_n (except for
// E1), then s_1..s_p.
Instance Generate(const ExperimentConfig& config);

// Instance k uses seed config.seed + k.
std::vector<Instance> GenerateBatch(const ExperimentConfig& config, int count);

// e<f>_n<N>_p<P>_s<seed>.pipe
std::string InstanceFileName(const ExperimentConfig& config);

// Numerical matching with target sums: find permutations pairing every x_i
// with a distinct y and a distinct z so that x + y = z.
struct NmwtsInstance {
  std::vector<int> x;
  std::vector<int> y;
  std::vector<int> z;

  int size() const { return static_cast<int>(x.size()); }
  int MaxValue() const;
};

// The chains-to-chains instance used to show that the heterogeneous variant
// is NP-complete. With M the largest input value, B = 2M, C = 5M, D = 7M and
// N = M + 3, block i (1-based) of N elements is
//   B + x_i, then M ones, then C, then D,
// the values are s_i = B + z_i, s_{m+i} = C + M - y_i, s_{2m+i} = D, and the
// bound is 1. The matching instance is solvable iff the partition one is.
Hetero1DInstance BuildReductionInstance(const NmwtsInstance& nmwts);

}  // namespace pipemap

#endif  // PIPEMAP_GEN_H_

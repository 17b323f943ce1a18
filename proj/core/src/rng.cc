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

#include "pipemap/rng.h"

#include <limits>

#include "pipemap/error.h"

namespace pipemap {

Xorshift64Star::Xorshift64Star(std::uint64_t seed) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  state_ = z != 0 ? z : 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::Next() {
  std::uint64_t x = state_;
  x ^= x >> 12;
  x ^= x << 25;
  x ^= x >> 27;
  state_ = x;
  return x * 0x2545F4914F6CDD1DULL;
}

std::int64_t Xorshift64Star::UniformInt(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorCode::kInvalidArgument, "empty integer range");
  const std::uint64_t range =
      static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(Next());  // full 2^64 span
  // 2^64 mod range, computed without 128-bit arithmetic.
  const std::uint64_t excess = (0 - range) % range;
  const std::uint64_t limit = 0 - excess;  // 2^64 - excess, wraps to 0 if 0
  std::uint64_t x = Next();
  if (excess != 0) {
    while (x >= limit) x = Next();
  }
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % range);
}

double Xorshift64Star::UniformReal(double lo, double hi) {
  const double u = static_cast<double>(Next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace pipemap

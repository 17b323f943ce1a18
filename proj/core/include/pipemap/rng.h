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

#ifndef PIPEMAP_RNG_H_
#define PIPEMAP_RNG_H_

#include <cstdint>

namespace pipemap {

// xorshift64* (Vigna 2016). One step:
//
//   x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;
//   return x * 0x2545F4914F6CDD1D;
//
// The state is initialized with one splitmix64 step of the seed
//
//   z = seed + 0x9E3779B97F4A7C15;
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//   z ^= z >> 31;
//
// replaced by 0x9E3779B97F4A7C15 if it is zero. The stream is fully specified
// so that instances can be regenerated bit-for-bit in other languages.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed);

  std::uint64_t Next();

  // Uniform in [lo, hi], both inclusive, by rejection sampling: draws below
  // 2^64 - (2^64 mod (hi - lo + 1)) are accepted and reduced modulo the range.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);

  // lo + (hi - lo) * u with u = (Next() >> 11) * 2^-53, so in [lo, hi).
  double UniformReal(double lo, double hi);

 private:
  std::uint64_t state_;
};

}  // namespace pipemap

#endif  // PIPEMAP_RNG_H_

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

#ifndef PIPEMAP_INSTANCE_IO_H_
#define PIPEMAP_INSTANCE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "pipemap/model.h"

namespace pipemap {

struct Instance {
  PipelineApp app;
  Platform platform;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Line-oriented instance text. '#' starts a comment; blank lines are ignored.
//
//   pipeline v1
//   n 3
//   b 2
//   delta 2 4 6 2
//   w 4 2 6
//   p 2
//   s 2 1
//
// The header must come first; the keyed lines may appear in any order but
// each exactly once. The parsed instance is validated.
Instance ParseInstance(std::string_view text);
Instance ReadInstanceFile(const std::filesystem::path& path);

// Writes the keyed lines in the order shown above, using the shortest decimal
// form that round-trips each double.
std::string FormatInstance(const PipelineApp& app, const Platform& platform);
void WriteInstanceFile(const std::filesystem::path& path,
                       const PipelineApp& app, const Platform& platform);

// "map 1-2:1 3-3:2". The leading "map" keyword is optional on input. A
// single-stage interval may also be written "3:2". Only syntax is checked;
// use Validate for the structural invariants.
IntervalMapping ParseMapping(std::string_view text);
std::string FormatMapping(const IntervalMapping& mapping);

// Shortest round-trip decimal representation.
std::string FormatReal(double value);

}  // namespace pipemap

#endif  // PIPEMAP_INSTANCE_IO_H_

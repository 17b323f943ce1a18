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

#include <gtest/gtest.h>

#include "property_checks.h"

namespace pipemap::testing {
namespace {

constexpr int kCases = 500;

void ExpectHolds(const PropertyResult& r) {
  EXPECT_GE(r.cases, kCases);
  EXPECT_TRUE(r.ok()) << r.failures << " failures; " << r.first_failure;
}

TEST(PropertyTest, ScaleInvariance) { ExpectHolds(CheckScaleInvariance(101, kCases)); }
TEST(PropertyTest, BottleneckDecrease) { ExpectHolds(CheckBottleneckDecrease(102, kCases)); }
TEST(PropertyTest, LatencyBoundedTrace) { ExpectHolds(CheckLatencyBoundedTrace(103, kCases)); }
TEST(PropertyTest, ParetoNonDomination) { ExpectHolds(CheckParetoNonDomination(104, kCases)); }
TEST(PropertyTest, DecisionMonotonicity) { ExpectHolds(CheckDecisionMonotonicity(105, kCases)); }
TEST(PropertyTest, LatencyBounds) { ExpectHolds(CheckLatencyBounds(106, kCases)); }
TEST(PropertyTest, HeuristicHonesty) { ExpectHolds(CheckHeuristicHonesty(107, kCases)); }

}  // namespace
}  // namespace pipemap::testing

// Copyright 2026 The ringpir Authors
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

#include "ringpir/adversary_lab.h"
#include "ringpir/errors.h"

namespace ringpir {
namespace {

TEST(Privacy, AdditiveSingleServerViewsIdenticalExactly) {
  for (unsigned p : {2u, 3u}) {
    const RingModulus mod(p, 1);
    const DpfParams params = DpfParams::additive(2, 2, mod);
    for (unsigned j : {1u, 2u}) {
      const std::vector<unsigned> coalition{j};
      std::optional<ViewHistogram> reference;
      for (std::uint64_t alpha = 1; alpha <= 2; ++alpha) {
        for (unsigned b = 1; b < p; ++b) {
          const ViewHistogram h =
              exact_view_distribution(params, PointFunction{2, alpha, RingElement(mod, b)}, coalition);
          std::uint64_t total = 0;
          for (const auto& [view, count] : h) total += count;
          EXPECT_EQ(total, p * p);
          if (!reference) {
            reference = h;
          } else {
            EXPECT_EQ(h, *reference) << "server " << j << " alpha " << alpha << " beta " << b;
          }
        }
      }
    }
  }
}

TEST(Privacy, FullCoalitionLearnsThePoint) {
  const RingModulus z3(3, 1);
  const DpfParams params = DpfParams::additive(2, 1, z3);
  const std::vector<unsigned> both{1, 2};
  EXPECT_NE(exact_view_distribution(params, PointFunction{1, 1, RingElement(z3, 1)}, both),
            exact_view_distribution(params, PointFunction{1, 1, RingElement(z3, 2)}, both));
}

TEST(Privacy, CnfExactForSmallRing) {
  const RingModulus z2(2, 1);
  const DpfParams params = DpfParams::cnf(3, 1, 2, z2);
  for (unsigned j = 1; j <= 3; ++j) {
    const std::vector<unsigned> coalition{j};
    EXPECT_EQ(exact_view_distribution(params, PointFunction{2, 1, RingElement(z2, 1)}, coalition),
              exact_view_distribution(params, PointFunction{2, 2, RingElement(z2, 1)}, coalition));
  }
}

TEST(Privacy, EnumerationGuard) {
  const RingModulus mod(131, 1);
  const std::vector<unsigned> c{1};
  try {
    exact_view_distribution(DpfParams::additive(3, 4, mod), PointFunction{4, 1, RingElement(mod, 1)}, c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRingTooLarge);
  }
}

TEST(ChiSquare, AcceptsSameAndRejectsDifferent) {
  ViewHistogram a{{{0}, 5000}, {{1}, 5000}};
  ViewHistogram b{{{0}, 4950}, {{1}, 5050}};
  EXPECT_GT(chi_square_homogeneity(a, b).p_value, 0.1);
  ViewHistogram skew{{{0}, 6000}, {{1}, 4000}};
  const ChiSquareResult r = chi_square_homogeneity(a, skew);
  EXPECT_EQ(r.degrees_of_freedom, 1u);
  EXPECT_LT(r.p_value, 1e-6);
  ViewHistogram disjoint{{{2}, 10000}};
  EXPECT_LT(chi_square_homogeneity(a, disjoint).p_value, 1e-6);
}

TEST(ChiSquare, SampledCnfViewsAgree) {
  const RingModulus z3(3, 1);
  const DpfParams params = DpfParams::cnf(3, 1, 1, z3);
  const std::vector<unsigned> coalition{2};
  const ViewHistogram a = sampled_view_histogram(params, PointFunction{1, 1, RingElement(z3, 1)}, coalition, 20000, 0);
  const ViewHistogram b = sampled_view_histogram(params, PointFunction{1, 1, RingElement(z3, 2)}, coalition, 20000, 20000);
  EXPECT_EQ(a.size(), 9u);
  EXPECT_GT(chi_square_homogeneity(a, b).p_value, 1e-6);
}

}  // namespace
}  // namespace ringpir

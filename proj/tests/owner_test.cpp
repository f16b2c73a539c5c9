// Copyright 2026 The fedmine Authors
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

#include "fedmine/owner.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace fedmine {
namespace {

CandidateAssignment assignment_of(
    std::size_t vector_len,
    std::vector<std::pair<std::size_t, Pattern>> entries) {
  CandidateAssignment assignment;
  assignment.round_vector_len = vector_len;
  for (auto& [index, pattern] : entries) {
    assignment.entries.push_back({index, std::move(pattern)});
  }
  return assignment;
}

TEST(OwnerTest, EmptyAssignmentYieldsAllZeros) {
  const LocalData data = LocalData::itemset({1, 2});
  const NoiseParams noise{2.0, 50, 1000};
  Rng rng(make_rng(1));
  const ResponseVector response =
      respond(data, assignment_of(5, {}), noise, rng);
  EXPECT_EQ(response.entries, std::vector<std::int64_t>(5, 0));
}

TEST(OwnerTest, NoiselessEntriesAreContainmentIndicators) {
  const LocalData data = LocalData::itemset({1, 2, 3});
  const auto assignment =
      assignment_of(4, {{0, Pattern::itemset({1, 2})},
                        {2, Pattern::itemset({4})},
                        {3, Pattern::itemset({3})}});
  const ResponseVector response = respond_noiseless(data, assignment);
  EXPECT_EQ(response.entries, (std::vector<std::int64_t>{1, 0, 0, 1}));
}

TEST(OwnerTest, UnassignedIndicesStayZeroUnderNoise) {
  const LocalData data = LocalData::itemset({1});
  const NoiseParams noise{2.0, 50, 10};
  Rng rng(make_rng(2));
  const auto assignment = assignment_of(6, {{2, Pattern::itemset({1})}});
  for (int i = 0; i < 200; ++i) {
    const ResponseVector response = respond(data, assignment, noise, rng);
    for (std::size_t j = 0; j < response.entries.size(); ++j) {
      if (j != 2) {
        EXPECT_EQ(response.entries[j], 0);
      }
    }
  }
}

TEST(OwnerTest, BudgetOverrunRejected) {
  const LocalData data = LocalData::itemset({1});
  const NoiseParams noise{2.0, 2, 10};
  Rng rng(make_rng(3));
  const auto assignment = assignment_of(3, {{0, Pattern::itemset({0})},
                                            {1, Pattern::itemset({1})},
                                            {2, Pattern::itemset({2})}});
  EXPECT_THROW(respond(data, assignment, noise, rng), std::invalid_argument);
}

TEST(OwnerTest, KindMismatchRejected) {
  const LocalData data = LocalData::sequence({1, 2});
  const NoiseParams noise{2.0, 50, 10};
  Rng rng(make_rng(4));
  const auto assignment = assignment_of(1, {{0, Pattern::itemset({1})}});
  EXPECT_THROW(respond(data, assignment, noise, rng), std::invalid_argument);
}

TEST(OwnerTest, MalformedAssignmentsRejected) {
  const LocalData data = LocalData::itemset({1});
  const NoiseParams noise{2.0, 50, 10};
  Rng rng(make_rng(5));
  const auto out_of_range = assignment_of(2, {{2, Pattern::itemset({1})}});
  EXPECT_THROW(respond(data, out_of_range, noise, rng), std::invalid_argument);
  const auto duplicated = assignment_of(3, {{1, Pattern::itemset({1})},
                                            {1, Pattern::itemset({2})}});
  EXPECT_THROW(respond(data, duplicated, noise, rng), std::invalid_argument);
}

// Eq.-level unbiasedness: a present candidate averages to 1 because the
// noise share X - Y is symmetric around zero.
TEST(OwnerTest, PresentCandidateAveragesToOne) {
  const LocalData data = LocalData::itemset({1, 2});
  const NoiseParams noise{2.0, 50, 1000};
  const auto assignment = assignment_of(1, {{0, Pattern::itemset({1})}});
  Rng rng(make_rng(6));
  const std::size_t n = 100000;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += static_cast<double>(
        respond(data, assignment, noise, rng).entries[0]);
  }
  const double mean = sum / static_cast<double>(n);
  const PolyaParams polya = noise.owner_polya();
  const double share_var = 2.0 * polya.shape * polya.success /
                           ((1.0 - polya.success) * (1.0 - polya.success));
  EXPECT_NEAR(mean, 1.0, 3.0 * std::sqrt(share_var / n));
}

TEST(OwnerTest, ResponsesAreDeterministicUnderFixedSeed) {
  const LocalData data = LocalData::itemset({1, 5});
  const NoiseParams noise{1.0, 10, 25};
  const auto assignment = assignment_of(3, {{0, Pattern::itemset({1})},
                                            {1, Pattern::itemset({9})},
                                            {2, Pattern::itemset({5})}});
  Rng a(make_rng(7));
  Rng b(make_rng(7));
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(respond(data, assignment, noise, a).entries,
              respond(data, assignment, noise, b).entries);
  }
}

}  // namespace
}  // namespace fedmine

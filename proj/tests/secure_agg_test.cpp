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

#include "fedmine/secure_agg.hpp"

#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

namespace fedmine {
namespace {

std::vector<OwnerId> owner_range(std::size_t n, OwnerId first = 0) {
  std::vector<OwnerId> ids(n);
  std::iota(ids.begin(), ids.end(), first);
  return ids;
}

TEST(SecureAggTest, TwoOwnersDegreeOneFormSingleEdge) {
  Rng rng(make_rng(1));
  const auto session = build_session(owner_range(2), 1, 4, rng);
  ASSERT_EQ(session.edges.size(), 1u);
  EXPECT_EQ(session.edges[0].a, 0u);
  EXPECT_EQ(session.edges[0].b, 1u);
}

TEST(SecureAggTest, SingleOwnerMaskingIsIdentity) {
  Rng rng(make_rng(2));
  const auto session = build_session(owner_range(1), 3, 3, rng);
  EXPECT_TRUE(session.edges.empty());
  const std::vector<std::int64_t> response{4, -9, 0};
  const MaskedVector masked = mask(response, session, 0);
  for (std::size_t i = 0; i < response.size(); ++i) {
    EXPECT_EQ(static_cast<std::int64_t>(masked.entries[i]), response[i]);
  }
}

TEST(SecureAggTest, DegreeStaysWithinOneOfTarget) {
  Rng rng(make_rng(3));
  const int target = 20;  // 2 * ceil(log2(1000))
  const auto session = build_session(owner_range(1000), target, 1, rng);
  std::vector<int> degree(1000, 0);
  for (const auto& edge : session.edges) {
    ++degree[edge.a];
    ++degree[edge.b];
  }
  for (int d : degree) {
    EXPECT_GE(d, target - 1);
    EXPECT_LE(d, target + 1);
  }
}

TEST(SecureAggTest, InfeasibleDegreeRejected) {
  Rng rng(make_rng(4));
  EXPECT_THROW(build_session(owner_range(4), 4, 1, rng),
               std::invalid_argument);
  EXPECT_THROW(build_session(owner_range(4), 0, 1, rng),
               std::invalid_argument);
}

TEST(SecureAggTest, PairwiseMasksCancelExactly) {
  Rng rng(make_rng(5));
  const auto session = build_session(owner_range(2), 1, 16, rng);
  const std::vector<std::int64_t> zero(16, 0);
  const MaskedVector a = mask(zero, session, 0);
  const MaskedVector b = mask(zero, session, 1);
  for (std::size_t i = 0; i < zero.size(); ++i) {
    EXPECT_EQ(a.entries[i] + b.entries[i], 0u);
  }
}

TEST(SecureAggTest, MaskTotalOverOwnersIsZeroVector) {
  Rng rng(make_rng(6));
  const auto session = build_session(owner_range(17), 4, 9, rng);
  const std::vector<std::int64_t> zero(9, 0);
  std::vector<std::uint64_t> total(9, 0);
  for (OwnerId id = 0; id < 17; ++id) {
    const MaskedVector masked = mask(zero, session, id);
    for (std::size_t i = 0; i < total.size(); ++i) {
      total[i] += masked.entries[i];
    }
  }
  for (std::uint64_t entry : total) EXPECT_EQ(entry, 0u);
}

TEST(SecureAggTest, AggregateZeroVectors) {
  Rng rng(make_rng(7));
  const auto session = build_session(owner_range(5), 2, 6, rng);
  std::vector<MaskedVector> uploads;
  const std::vector<std::int64_t> zero(6, 0);
  for (OwnerId id = 0; id < 5; ++id) {
    uploads.push_back(mask(zero, session, id));
  }
  EXPECT_EQ(aggregate(uploads, session), zero);
}

TEST(SecureAggTest, AggregateIsBitExactSum) {
  Rng rng(make_rng(8));
  const auto session = build_session(owner_range(3), 1, 1, rng);
  std::vector<MaskedVector> uploads;
  uploads.push_back(mask(std::vector<std::int64_t>{1}, session, 0));
  uploads.push_back(mask(std::vector<std::int64_t>{0}, session, 1));
  uploads.push_back(mask(std::vector<std::int64_t>{1}, session, 2));
  EXPECT_EQ(aggregate(uploads, session), std::vector<std::int64_t>{2});
}

TEST(SecureAggTest, AggregateMatchesPlainSumOnRandomVectors) {
  std::mt19937_64 data_rng(20260810);
  std::uniform_int_distribution<std::int64_t> value(-(1 << 20), 1 << 20);
  for (int trial = 0; trial < 5; ++trial) {
    Rng rng(make_rng(100 + trial));
    const std::size_t owners = 200;
    const std::size_t len = 50;
    const auto session = build_session(owner_range(owners), 8, len, rng);
    std::vector<std::int64_t> expected(len, 0);
    std::vector<MaskedVector> uploads;
    for (OwnerId id = 0; id < owners; ++id) {
      std::vector<std::int64_t> response(len);
      for (std::size_t i = 0; i < len; ++i) {
        response[i] = value(data_rng);
        expected[i] += response[i];
      }
      uploads.push_back(mask(response, session, id));
    }
    EXPECT_EQ(aggregate(uploads, session), expected);
  }
}

TEST(SecureAggTest, ChangingEdgeSeedDiffusesThroughWholeVector) {
  const std::size_t len = 64;
  int diffused_trials = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(make_rng(300 + trial));
    auto session = build_session(owner_range(2), 1, len, rng);
    const std::vector<std::int64_t> zero(len, 0);
    const MaskedVector before = mask(zero, session, 0);
    session.edges[0].seed ^= 0x1ULL << (trial % 64);
    const MaskedVector after = mask(zero, session, 0);
    std::size_t differing = 0;
    for (std::size_t i = 0; i < len; ++i) {
      if (before.entries[i] != after.entries[i]) ++differing;
    }
    if (differing >= len - 1) ++diffused_trials;
  }
  EXPECT_EQ(diffused_trials, 100);
}

TEST(SecureAggTest, AggregateRejectsMissingAndDuplicateOwners) {
  Rng rng(make_rng(9));
  const auto session = build_session(owner_range(3), 1, 2, rng);
  const std::vector<std::int64_t> zero(2, 0);
  std::vector<MaskedVector> uploads{mask(zero, session, 0),
                                    mask(zero, session, 1)};
  EXPECT_THROW(aggregate(uploads, session), std::invalid_argument);
  uploads.push_back(mask(zero, session, 1));
  EXPECT_THROW(aggregate(uploads, session), std::invalid_argument);
  uploads.pop_back();
  uploads.push_back(mask(zero, session, 2));
  EXPECT_NO_THROW(aggregate(uploads, session));
}

TEST(SecureAggTest, MaskRejectsBadInputs) {
  Rng rng(make_rng(10));
  const auto session = build_session(owner_range(2), 1, 3, rng);
  const std::vector<std::int64_t> short_vec(2, 0);
  EXPECT_THROW(mask(short_vec, session, 0), std::invalid_argument);
  const std::vector<std::int64_t> ok(3, 0);
  EXPECT_THROW(mask(ok, session, 77), std::invalid_argument);
}

TEST(SecureAggTest, SessionsAreDeterministicUnderFixedSeed) {
  Rng a(make_rng(11));
  Rng b(make_rng(11));
  const auto first = build_session(owner_range(40), 6, 5, a);
  const auto second = build_session(owner_range(40), 6, 5, b);
  ASSERT_EQ(first.edges.size(), second.edges.size());
  for (std::size_t i = 0; i < first.edges.size(); ++i) {
    EXPECT_EQ(first.edges[i].a, second.edges[i].a);
    EXPECT_EQ(first.edges[i].b, second.edges[i].b);
    EXPECT_EQ(first.edges[i].seed, second.edges[i].seed);
  }
}

}  // namespace
}  // namespace fedmine

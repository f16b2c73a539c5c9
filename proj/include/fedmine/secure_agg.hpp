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

#ifndef FEDMINE_SECURE_AGG_HPP_
#define FEDMINE_SECURE_AGG_HPP_

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "fedmine/rng.hpp"

namespace fedmine {

using OwnerId = std::uint64_t;

// Simulated secure aggregation: each pair of neighboring owners shares a
// seed; one endpoint adds the seed's PRG expansion to its upload, the
// other subtracts it, all in the ring of integers mod 2^64. Summed over
// all participants the masks cancel exactly, so the aggregator recovers
// the exact integer sum and nothing else from any single upload. The
// real protocol's self-masks, secret sharing, and dropout recovery are
// out of scope: the simulation requires full participation.
struct AggregationSession {
  struct Edge {
    std::uint32_t a;  // indices into owners, a < b
    std::uint32_t b;
    std::uint64_t seed;
  };

  std::vector<OwnerId> owners;
  std::vector<Edge> edges;
  std::size_t vector_len = 0;
  // edge indices incident to each owner position
  std::vector<std::vector<std::uint32_t>> incident;
  std::unordered_map<OwnerId, std::uint32_t> position;

  bool has_owner(OwnerId id) const { return position.contains(id); }
};

struct MaskedVector {
  OwnerId owner = 0;
  std::vector<std::uint64_t> entries;
};

// Builds a near-regular communication graph (every degree within one of
// the target) with one shared seed per edge. Requires
// neighbors_per_owner in [1, |owners|) when there are two or more
// owners; a single owner forms an empty graph and masking is the
// identity.
AggregationSession build_session(const std::vector<OwnerId>& owner_ids,
                                 int neighbors_per_owner,
                                 std::size_t vector_len, Rng& rng);

// Embeds the signed response into the ring (two's complement) and adds
// the pairwise mask expansions. Throws if the owner is not in the
// session or the length does not match.
MaskedVector mask(std::span<const std::int64_t> response,
                  const AggregationSession& session, OwnerId owner);

// Ring-sum of exactly one masked vector per session owner, mapped back
// to signed integers. Bit-exact equal to the plain sum of the unmasked
// responses whenever that sum fits in int64. Throws on a missing,
// duplicate, or unknown owner (dropout is unsupported).
std::vector<std::int64_t> aggregate(const std::vector<MaskedVector>& masked,
                                    const AggregationSession& session);

}  // namespace fedmine

#endif  // FEDMINE_SECURE_AGG_HPP_

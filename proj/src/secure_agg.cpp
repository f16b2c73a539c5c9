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

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

namespace fedmine {

AggregationSession build_session(const std::vector<OwnerId>& owner_ids,
                                 int neighbors_per_owner,
                                 std::size_t vector_len, Rng& rng) {
  AggregationSession session;
  session.owners = owner_ids;
  session.vector_len = vector_len;
  const std::size_t n = owner_ids.size();
  session.incident.resize(n);
  session.position.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    auto [it, inserted] = session.position.emplace(owner_ids[i], i);
    if (!inserted) throw std::invalid_argument("duplicate owner id in session");
  }
  if (n <= 1) return session;

  if (neighbors_per_owner < 1) {
    throw std::invalid_argument("neighbors_per_owner must be >= 1");
  }
  if (static_cast<std::size_t>(neighbors_per_owner) >= n) {
    throw std::invalid_argument("neighbors_per_owner must be < owner count");
  }

  // Circulant graph over a shuffled ring: connecting offsets 1..s gives
  // every owner degree 2s (or n-1 when offsets wrap onto each other),
  // within one of the requested degree.
  std::vector<std::uint32_t> ring(n);
  std::iota(ring.begin(), ring.end(), 0);
  std::shuffle(ring.begin(), ring.end(), rng);

  const std::uint32_t steps =
      static_cast<std::uint32_t>((neighbors_per_owner + 1) / 2);
  std::set<std::pair<std::uint32_t, std::uint32_t>> edge_keys;
  for (std::uint32_t step = 1; step <= steps; ++step) {
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint32_t a = ring[i];
      std::uint32_t b = ring[(i + step) % n];
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      edge_keys.emplace(a, b);
    }
  }
  session.edges.reserve(edge_keys.size());
  for (const auto& [a, b] : edge_keys) {
    const std::uint64_t seed = rng();
    const auto edge_index = static_cast<std::uint32_t>(session.edges.size());
    session.edges.push_back({a, b, seed});
    session.incident[a].push_back(edge_index);
    session.incident[b].push_back(edge_index);
  }
  return session;
}

MaskedVector mask(std::span<const std::int64_t> response,
                  const AggregationSession& session, OwnerId owner) {
  auto it = session.position.find(owner);
  if (it == session.position.end()) {
    throw std::invalid_argument("owner is not part of the session");
  }
  if (response.size() != session.vector_len) {
    throw std::invalid_argument("response length does not match session");
  }
  MaskedVector out;
  out.owner = owner;
  out.entries.resize(session.vector_len);
  for (std::size_t i = 0; i < response.size(); ++i) {
    out.entries[i] = static_cast<std::uint64_t>(response[i]);
  }
  const std::uint32_t self = it->second;
  for (std::uint32_t edge_index : session.incident[self]) {
    const auto& edge = session.edges[edge_index];
    Rng prg(edge.seed);
    if (edge.a == self) {
      for (auto& entry : out.entries) entry += prg();
    } else {
      for (auto& entry : out.entries) entry -= prg();
    }
  }
  return out;
}

std::vector<std::int64_t> aggregate(const std::vector<MaskedVector>& masked,
                                    const AggregationSession& session) {
  std::vector<bool> seen(session.owners.size(), false);
  std::vector<std::uint64_t> sum(session.vector_len, 0);
  for (const MaskedVector& v : masked) {
    auto it = session.position.find(v.owner);
    if (it == session.position.end()) {
      throw std::invalid_argument("masked vector from unknown owner");
    }
    if (seen[it->second]) {
      throw std::invalid_argument("duplicate masked vector for owner");
    }
    seen[it->second] = true;
    if (v.entries.size() != session.vector_len) {
      throw std::invalid_argument("masked vector length mismatch");
    }
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += v.entries[i];
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::invalid_argument("missing masked vector: dropout unsupported");
  }
  std::vector<std::int64_t> out(sum.size());
  for (std::size_t i = 0; i < sum.size(); ++i) {
    out[i] = static_cast<std::int64_t>(sum[i]);
  }
  return out;
}

}  // namespace fedmine

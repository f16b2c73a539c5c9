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

#ifndef FEDMINE_ANALYST_HPP_
#define FEDMINE_ANALYST_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fedmine/noise.hpp"
#include "fedmine/owner.hpp"
#include "fedmine/pattern.hpp"
#include "fedmine/secure_agg.hpp"

namespace fedmine {

enum class Strategy { kVanilla, kCandidatePadding, kOwnerReusing };

std::string to_string(Strategy strategy);
Strategy strategy_from_string(std::string_view text);

// Per-candidate accumulator: sum of aggregated responses, total
// responses received, rounds spent in the pool. While the candidate is
// live, response_count == responders * rounds_live.
struct CandidateProfile {
  std::int64_t response_sum = 0;    // r_c
  std::int64_t response_count = 0;  // n_c
  std::int64_t rounds_live = 0;     // m_c

  double ratio() const {
    return response_count == 0
               ? 0.0
               : static_cast<double>(response_sum) /
                     static_cast<double>(response_count);
  }
};

struct AnalystConfig {
  NoiseParams noise;
  double target_frequency = 0.05;   // f in (0, 1)
  std::int64_t response_cap = 20000;  // tau, positive multiple of P
  double eta_geometric = 0.01;  // confidence parameter for the noise term
  double eta_sampling = 0.01;   // confidence parameter for the sampling term
  Strategy strategy = Strategy::kVanilla;

  void validate() const;
};

enum class FilterDecision { kAcceptFrequent, kRejectInfrequent, kHold };

// The combined confidence radius around r_c/n_c:
//
//   B = sqrt( 2 e^(-eps/K) / (2 (1 - e^(-eps/K))^2 P^2 m_c eta_g) )
//     + sqrt( ln(eta_s) / (-2 n_c) )
//
// The first term bounds the aggregated geometric noise (Chebyshev), the
// second the owner-sampling error (Hoeffding). Requires m_c >= 1.
double bound_term(const CandidateProfile& profile, const AnalystConfig& config);

// Accept when ratio - B >= f; else reject when ratio + B <= f; else once
// n_c >= tau decide by the raw ratio; otherwise hold for more responses.
// Evaluated in exactly this order.
FilterDecision filter_candidate(const CandidateProfile& profile,
                                const AnalystConfig& config);

// Candidate bookkeeping for the mining loop. Live candidates are kept in
// a stable order — earlier batches first, each batch in canonical
// pattern order — and a candidate's position is its index in the round's
// response vector.
class CandidatePool {
 public:
  struct LiveCandidate {
    Pattern pattern;
    CandidateProfile profile;
    bool padded = false;  // speculative, not yet justified by accepts
  };

  explicit CandidatePool(PatternUniverse universe);

  const PatternUniverse& universe() const { return universe_; }
  const std::vector<LiveCandidate>& live() const { return live_; }
  const std::set<Pattern>& accepted() const { return accepted_; }
  const std::set<Pattern>& rejected() const { return rejected_; }

  // Seeds the pool with all basic patterns.
  void seed_basics();

  // r_c += aggregate[i]; n_c += P; m_c += 1 for every live candidate.
  void update_profiles(std::span<const std::int64_t> aggregated,
                       int responders);

  struct FilterOutcome {
    int accepts = 0;
    int rejects = 0;
    int holds = 0;
  };

  // Filters every live candidate (decisions are computed from profiles
  // alone, then applied), moving accepts and rejects out of the pool.
  FilterOutcome filter_all(const AnalystConfig& config);

  // Candidate padding: while |live| < K, sort the live candidates by
  // observed ratio (fresh ones count as 0, ties in canonical order),
  // virtually accept them one by one and append whatever new patterns the
  // virtual acceptances justify, as padded candidates, until the pool
  // holds K candidates or nothing more can be generated.
  void pad_to_budget(const AnalystConfig& config);

  // Apriori growth from the accepted set; everything ever seen (live,
  // accepted, rejected, padded history) counts as explored. Padded live
  // candidates whose subpatterns are now all accepted are promoted to
  // real candidates, keeping their accumulated profile. Returns the
  // number of new live candidates.
  std::size_t grow();

 private:
  std::set<Pattern> explored() const;
  void append_live(Pattern pattern, bool padded);

  PatternUniverse universe_;
  std::vector<LiveCandidate> live_;
  std::set<Pattern> live_set_;
  std::set<Pattern> accepted_;
  std::set<Pattern> rejected_;
  std::set<Pattern> padded_history_;
};

// Owners holding unspent budget between rounds (owner-reusing strategy).
struct ReuseState {
  struct SavedOwner {
    int budget_left = 0;             // in [0, K]; zero-budget owners evicted
    std::set<Pattern> responded;     // candidates this owner has ever answered
  };

  std::map<OwnerId, SavedOwner> saved;
};

struct OwnerSupplyExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Source of fresh owner ids; throws OwnerSupplyExhausted at a configured
// cap.
class FreshOwnerSupply {
 public:
  virtual ~FreshOwnerSupply() = default;
  virtual OwnerId take() = 0;
};

struct PlannedOwner {
  OwnerId id = 0;
  bool reused = false;
  CandidateAssignment assignment;
};

// Plans one round of assignments: every live candidate gets exactly P
// distinct owners, no owner holds more than K candidates in the round or
// K distinct candidates lifetime, and no owner ever answers the same
// candidate twice. Under owner reusing, saved owners with unseen
// candidates are consumed before any fresh owner is activated. The plan
// is deterministic given the pool and reuse state.
std::vector<PlannedOwner> plan_assignments(const CandidatePool& pool,
                                           const AnalystConfig& config,
                                           ReuseState& reuse,
                                           FreshOwnerSupply& supply);

}  // namespace fedmine

#endif  // FEDMINE_ANALYST_HPP_

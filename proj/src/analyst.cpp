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

#include "fedmine/analyst.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace fedmine {

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kVanilla:
      return "vanilla";
    case Strategy::kCandidatePadding:
      return "padding";
    case Strategy::kOwnerReusing:
      return "reusing";
  }
  throw std::invalid_argument("unknown strategy");
}

Strategy strategy_from_string(std::string_view text) {
  if (text == "vanilla") return Strategy::kVanilla;
  if (text == "padding") return Strategy::kCandidatePadding;
  if (text == "reusing") return Strategy::kOwnerReusing;
  throw std::invalid_argument("unknown strategy: '" + std::string(text) + "'");
}

void AnalystConfig::validate() const {
  noise.validate();
  if (!(target_frequency > 0.0) || !(target_frequency < 1.0)) {
    throw std::invalid_argument("target frequency must be in (0,1)");
  }
  if (response_cap < noise.responders) {
    throw std::invalid_argument("response cap tau must be >= P");
  }
  if (response_cap % noise.responders != 0) {
    throw std::invalid_argument("response cap tau must be a multiple of P");
  }
  for (double eta : {eta_geometric, eta_sampling}) {
    if (!(eta > 0.0) || !(eta < 1.0)) {
      throw std::invalid_argument("confidence parameters must be in (0,1)");
    }
  }
}

double bound_term(const CandidateProfile& profile,
                  const AnalystConfig& config) {
  if (profile.rounds_live < 1) {
    throw std::invalid_argument("bound_term requires at least one round");
  }
  const double alpha = config.noise.alpha();
  const double responders = config.noise.responders;
  const double m = static_cast<double>(profile.rounds_live);
  const double n = static_cast<double>(profile.response_count);
  const double geometric =
      std::sqrt(2.0 * alpha / (2.0 * (1.0 - alpha) * (1.0 - alpha) *
                               responders * responders * m *
                               config.eta_geometric));
  const double sampling = std::sqrt(std::log(config.eta_sampling) / (-2.0 * n));
  return geometric + sampling;
}

FilterDecision filter_candidate(const CandidateProfile& profile,
                                const AnalystConfig& config) {
  const double ratio = profile.ratio();
  const double bound = bound_term(profile, config);
  const double f = config.target_frequency;
  if (ratio - bound >= f) return FilterDecision::kAcceptFrequent;
  if (ratio + bound <= f) return FilterDecision::kRejectInfrequent;
  if (profile.response_count >= config.response_cap) {
    return ratio >= f ? FilterDecision::kAcceptFrequent
                      : FilterDecision::kRejectInfrequent;
  }
  return FilterDecision::kHold;
}

CandidatePool::CandidatePool(PatternUniverse universe)
    : universe_(universe) {
  universe_.validate();
}

void CandidatePool::seed_basics() {
  for (Pattern& p : basic_patterns(universe_)) {
    append_live(std::move(p), /*padded=*/false);
  }
}

void CandidatePool::append_live(Pattern pattern, bool padded) {
  auto [it, inserted] = live_set_.insert(pattern);
  if (!inserted) {
    throw std::logic_error("candidate already live: " + pattern.to_string());
  }
  if (padded) padded_history_.insert(pattern);
  live_.push_back({std::move(pattern), CandidateProfile{}, padded});
}

void CandidatePool::update_profiles(std::span<const std::int64_t> aggregated,
                                    int responders) {
  if (aggregated.size() != live_.size()) {
    throw std::invalid_argument("aggregate length does not match pool size");
  }
  for (std::size_t i = 0; i < live_.size(); ++i) {
    live_[i].profile.response_sum += aggregated[i];
    live_[i].profile.response_count += responders;
    live_[i].profile.rounds_live += 1;
  }
}

CandidatePool::FilterOutcome CandidatePool::filter_all(
    const AnalystConfig& config) {
  FilterOutcome outcome;
  std::vector<LiveCandidate> survivors;
  survivors.reserve(live_.size());
  for (LiveCandidate& candidate : live_) {
    assert(candidate.profile.rounds_live >= 1);
    switch (filter_candidate(candidate.profile, config)) {
      case FilterDecision::kAcceptFrequent:
        ++outcome.accepts;
        live_set_.erase(candidate.pattern);
        accepted_.insert(std::move(candidate.pattern));
        break;
      case FilterDecision::kRejectInfrequent:
        ++outcome.rejects;
        live_set_.erase(candidate.pattern);
        rejected_.insert(std::move(candidate.pattern));
        break;
      case FilterDecision::kHold:
        ++outcome.holds;
        survivors.push_back(std::move(candidate));
        break;
    }
  }
  live_ = std::move(survivors);
  return outcome;
}

std::set<Pattern> CandidatePool::explored() const {
  std::set<Pattern> out = accepted_;
  out.insert(rejected_.begin(), rejected_.end());
  out.insert(padded_history_.begin(), padded_history_.end());
  out.insert(live_set_.begin(), live_set_.end());
  return out;
}

void CandidatePool::pad_to_budget(const AnalystConfig& config) {
  const auto budget = static_cast<std::size_t>(config.noise.k_budget);
  if (live_.size() >= budget) return;
  if (universe_.kind == PatternKind::kItem) return;

  // Most promising first; fresh candidates carry ratio 0.
  std::vector<const LiveCandidate*> order;
  order.reserve(live_.size());
  for (const LiveCandidate& c : live_) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(),
                   [](const LiveCandidate* a, const LiveCandidate* b) {
                     const double ra = a->profile.ratio();
                     const double rb = b->profile.ratio();
                     if (ra != rb) return ra > rb;
                     return a->pattern < b->pattern;
                   });

  std::set<Pattern> virtual_accepted = accepted_;
  std::set<Pattern> seen = explored();
  for (const LiveCandidate* candidate : order) {
    virtual_accepted.insert(candidate->pattern);
    for (Pattern& generated :
         generate_candidates(virtual_accepted, seen, universe_)) {
      seen.insert(generated);
      append_live(std::move(generated), /*padded=*/true);
      if (live_.size() == budget) return;
    }
  }
}

std::size_t CandidatePool::grow() {
  // Promote padded candidates whose creation is now justified; their
  // accumulated profile carries over.
  for (LiveCandidate& candidate : live_) {
    if (!candidate.padded) continue;
    bool justified = true;
    for (const Pattern& sub : immediate_subpatterns(candidate.pattern)) {
      if (!accepted_.contains(sub)) {
        justified = false;
        break;
      }
    }
    if (justified) candidate.padded = false;
  }
  std::vector<Pattern> fresh =
      generate_candidates(accepted_, explored(), universe_);
  for (Pattern& p : fresh) {
    append_live(std::move(p), /*padded=*/false);
  }
  return fresh.size();
}

std::vector<PlannedOwner> plan_assignments(const CandidatePool& pool,
                                           const AnalystConfig& config,
                                           ReuseState& reuse,
                                           FreshOwnerSupply& supply) {
  const auto& live = pool.live();
  if (live.empty()) {
    throw std::invalid_argument("cannot plan a round with no candidates");
  }
  const auto k_budget = static_cast<std::size_t>(config.noise.k_budget);
  std::vector<int> need(live.size(), config.noise.responders);
  std::int64_t remaining =
      static_cast<std::int64_t>(live.size()) * config.noise.responders;
  std::vector<PlannedOwner> planned;

  if (config.strategy == Strategy::kOwnerReusing) {
    std::vector<OwnerId> drained;
    for (auto& [id, saved] : reuse.saved) {
      if (remaining == 0) break;
      CandidateAssignment assignment;
      assignment.round_vector_len = live.size();
      for (std::size_t i = 0; i < live.size(); ++i) {
        if (assignment.entries.size() ==
            static_cast<std::size_t>(saved.budget_left))
          break;
        if (need[i] > 0 && !saved.responded.contains(live[i].pattern)) {
          assignment.entries.push_back({i, live[i].pattern});
          --need[i];
          --remaining;
        }
      }
      if (assignment.entries.empty()) continue;
      saved.budget_left -= static_cast<int>(assignment.entries.size());
      for (const auto& entry : assignment.entries) {
        saved.responded.insert(entry.pattern);
      }
      if (saved.budget_left == 0) drained.push_back(id);
      planned.push_back({id, /*reused=*/true, std::move(assignment)});
    }
    for (OwnerId id : drained) reuse.saved.erase(id);
  }

  // Fresh owners walk the candidate list cyclically, each taking up to K
  // distinct still-needy candidates; with uniform needs this packs
  // ceil(|C| * P / min(|C|, K)) owners.
  std::size_t cursor = 0;
  while (remaining > 0) {
    const OwnerId id = supply.take();
    CandidateAssignment assignment;
    assignment.round_vector_len = live.size();
    std::size_t scanned = 0;
    std::size_t i = cursor;
    while (assignment.entries.size() < k_budget && scanned < live.size()) {
      if (need[i] > 0) {
        assignment.entries.push_back({i, live[i].pattern});
        --need[i];
        --remaining;
      }
      i = (i + 1) % live.size();
      ++scanned;
    }
    cursor = i;
    assert(!assignment.entries.empty());
    if (config.strategy == Strategy::kOwnerReusing &&
        assignment.entries.size() < k_budget) {
      ReuseState::SavedOwner saved;
      saved.budget_left =
          static_cast<int>(k_budget - assignment.entries.size());
      for (const auto& entry : assignment.entries) {
        saved.responded.insert(entry.pattern);
      }
      reuse.saved.emplace(id, std::move(saved));
    }
    planned.push_back({id, /*reused=*/false, std::move(assignment)});
  }
  return planned;
}

}  // namespace fedmine

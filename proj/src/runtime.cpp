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

#include "fedmine/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fedmine/secure_agg.hpp"

namespace fedmine {

namespace {

constexpr std::uint64_t kShuffleTag = 0x5348;  // owner order streams
constexpr std::uint64_t kSessionTag = 0x5345;  // per-round mask graphs
constexpr std::uint64_t kRespondTag = 0x5245;  // per-owner response draws

// Issues fresh owner ids 0,1,2,... and resolves each id to a dataset
// record through a seed-shuffled order. With replacement enabled the
// order is reshuffled per pass and ids keep growing, so a recycled
// record still looks like a brand-new owner.
class ShuffledOwnerSupply final : public FreshOwnerSupply {
 public:
  ShuffledOwnerSupply(std::size_t population, std::size_t cap,
                      bool with_replacement, std::uint64_t seed)
      : population_(population),
        cap_(cap),
        with_replacement_(with_replacement),
        seed_(seed) {}

  OwnerId take() override {
    if (issued_ >= cap_ ||
        (!with_replacement_ && issued_ >= population_)) {
      throw OwnerSupplyExhausted("fresh owner supply exhausted after " +
                                 std::to_string(issued_) + " owners");
    }
    return issued_++;
  }

  std::size_t issued() const { return issued_; }

  std::size_t record_of(OwnerId id) const {
    const std::size_t pass = id / population_;
    const std::size_t offset = id % population_;
    if (pass >= orders_.size()) {
      for (std::size_t p = orders_.size(); p <= pass; ++p) {
        std::vector<std::size_t> order(population_);
        std::iota(order.begin(), order.end(), 0);
        Rng rng(derive_seed(seed_, {kShuffleTag, p}));
        std::shuffle(order.begin(), order.end(), rng);
        orders_.push_back(std::move(order));
      }
    }
    return orders_[pass][offset];
  }

 private:
  std::size_t population_;
  std::size_t cap_;
  bool with_replacement_;
  std::uint64_t seed_;
  std::size_t issued_ = 0;
  mutable std::vector<std::vector<std::size_t>> orders_;
};

int auto_degree(std::size_t participants) {
  if (participants <= 1) return 0;
  const int target =
      2 * static_cast<int>(
              std::ceil(std::log2(static_cast<double>(participants))));
  return std::clamp(target, 1, static_cast<int>(participants) - 1);
}

}  // namespace

void ExperimentConfig::validate() const {
  analyst.validate();
  universe.validate();
  if (exhaustive && noise_enabled) {
    throw std::invalid_argument(
        "exhaustive mode bypasses the privacy budget and requires noise off");
  }
  if (secure_agg_degree < 0) {
    throw std::invalid_argument("secure aggregation degree must be >= 0");
  }
}

F1Scores f1_score(const std::set<Pattern>& mined,
                  const std::set<Pattern>& truth) {
  std::size_t hits = 0;
  for (const Pattern& p : mined) {
    if (truth.contains(p)) ++hits;
  }
  F1Scores scores;
  if (mined.empty()) {
    scores.precision = truth.empty() ? 1.0 : 0.0;
  } else {
    scores.precision = static_cast<double>(hits) / mined.size();
  }
  scores.recall =
      truth.empty() ? 1.0 : static_cast<double>(hits) / truth.size();
  const double denom = scores.precision + scores.recall;
  scores.f1 = denom > 0.0 ? 2.0 * scores.precision * scores.recall / denom
                          : 0.0;
  return scores;
}

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::vector<LocalData>& dataset) {
  config.validate();
  if (dataset.empty()) {
    throw std::invalid_argument("experiment requires a non-empty dataset");
  }
  for (const LocalData& owner : dataset) {
    if (owner.kind() != config.universe.kind) {
      throw std::invalid_argument("dataset kind does not match the universe");
    }
  }

  // Exhaustive mode: all owners answer every candidate, one round per
  // candidate generation (tau = P = N forces a raw-ratio decision).
  AnalystConfig analyst = config.analyst;
  if (config.exhaustive) {
    const int population = static_cast<int>(dataset.size());
    analyst.noise.k_budget = population;
    analyst.noise.responders = population;
    analyst.response_cap = population;
  }
  const int responders = analyst.noise.responders;

  ExperimentResult result;
  result.with_replacement = config.with_replacement;

  CandidatePool pool(config.universe);
  pool.seed_basics();

  const std::size_t default_cap = config.with_replacement
                                      ? std::numeric_limits<std::size_t>::max()
                                      : dataset.size();
  ShuffledOwnerSupply supply(dataset.size(),
                             config.owner_cap.value_or(default_cap),
                             config.with_replacement, config.seed);
  ReuseState reuse;

  int round = 0;
  while (!pool.live().empty()) {
    ++round;
    if (analyst.strategy == Strategy::kCandidatePadding) {
      pool.pad_to_budget(analyst);
    }

    std::vector<PlannedOwner> planned;
    if (config.exhaustive) {
      CandidateAssignment everything;
      everything.round_vector_len = pool.live().size();
      for (std::size_t i = 0; i < pool.live().size(); ++i) {
        everything.entries.push_back({i, pool.live()[i].pattern});
      }
      planned.reserve(dataset.size());
      for (OwnerId id = 0; id < dataset.size(); ++id) {
        planned.push_back({id, /*reused=*/false, everything});
      }
    } else {
      try {
        planned = plan_assignments(pool, analyst, reuse, supply);
      } catch (const OwnerSupplyExhausted&) {
        result.exhausted = true;
        --round;
        break;
      }
    }

    RoundStats stats;
    stats.round = round;
    stats.candidates = pool.live().size();

    std::vector<OwnerId> participant_ids;
    participant_ids.reserve(planned.size());
    for (const PlannedOwner& owner : planned) {
      participant_ids.push_back(owner.id);
      if (owner.reused) {
        ++stats.reused_owners;
      } else {
        ++stats.fresh_owners;
      }
    }

    const int degree = config.secure_agg_degree > 0
                           ? config.secure_agg_degree
                           : auto_degree(participant_ids.size());
    Rng session_rng(derive_seed(config.seed, {kSessionTag,
                                              static_cast<std::uint64_t>(round)}));
    AggregationSession session = build_session(
        participant_ids, degree, pool.live().size(), session_rng);

    std::vector<MaskedVector> uploads;
    uploads.reserve(planned.size());
    for (const PlannedOwner& owner : planned) {
      const LocalData& record =
          dataset[config.exhaustive ? owner.id : supply.record_of(owner.id)];
      ResponseVector response;
      if (config.noise_enabled) {
        Rng owner_rng(derive_seed(
            config.seed,
            {kRespondTag, owner.id, static_cast<std::uint64_t>(round)}));
        response = respond(record, owner.assignment, analyst.noise, owner_rng);
      } else {
        response = respond_noiseless(record, owner.assignment);
      }
      uploads.push_back(mask(response.entries, session, owner.id));
    }

    const std::vector<std::int64_t> aggregated = aggregate(uploads, session);
    pool.update_profiles(aggregated, responders);
    const CandidatePool::FilterOutcome outcome = pool.filter_all(analyst);
    stats.accepts = outcome.accepts;
    stats.rejects = outcome.rejects;
    stats.holds = outcome.holds;
    pool.grow();
    result.round_stats.push_back(stats);
  }

  result.rounds = round;
  result.mined = pool.accepted();
  result.unique_owners =
      config.exhaustive ? dataset.size() : supply.issued();

  const std::set<Pattern> truth =
      exact_fpm(dataset, analyst.target_frequency, config.universe);
  result.truth_size = truth.size();
  const F1Scores scores = f1_score(result.mined, truth);
  result.precision = scores.precision;
  result.recall = scores.recall;
  result.f1 = scores.f1;
  return result;
}

std::vector<StrategyOutcome> compare_strategies(
    const ExperimentConfig& base, const std::vector<LocalData>& dataset,
    const std::vector<Strategy>& strategies) {
  std::vector<Strategy> order{Strategy::kVanilla};
  for (Strategy s : strategies) {
    if (std::find(order.begin(), order.end(), s) == order.end()) {
      order.push_back(s);
    }
  }
  std::vector<StrategyOutcome> outcomes;
  outcomes.reserve(order.size());
  double vanilla_owners = 0.0;
  for (Strategy s : order) {
    ExperimentConfig config = base;
    config.analyst.strategy = s;
    StrategyOutcome outcome{s, run_experiment(config, dataset), 0.0};
    if (s == Strategy::kVanilla) {
      vanilla_owners = static_cast<double>(outcome.result.unique_owners);
    }
    if (vanilla_owners > 0.0) {
      outcome.owner_reduction_vs_vanilla_pct =
          100.0 * (vanilla_owners -
                   static_cast<double>(outcome.result.unique_owners)) /
          vanilla_owners;
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

}  // namespace fedmine

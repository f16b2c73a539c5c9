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

#ifndef FEDMINE_RUNTIME_HPP_
#define FEDMINE_RUNTIME_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "fedmine/analyst.hpp"
#include "fedmine/pattern.hpp"

namespace fedmine {

// A full experiment: the dataset is the owner population (one record =
// one owner); fresh owners are drawn without replacement in a
// seed-shuffled order. A fixed seed makes the run fully deterministic.
struct ExperimentConfig {
  AnalystConfig analyst;
  PatternUniverse universe;
  std::uint64_t seed = 0;
  // Cap on unique owners; defaults to the dataset size (or unlimited
  // with replacement enabled).
  std::optional<std::size_t> owner_cap;
  // Communication degree of the masking graph; 0 picks 2*ceil(log2 N_t).
  int secure_agg_degree = 0;
  bool noise_enabled = true;
  // Every owner responds to every candidate each round and candidates
  // are decided immediately by raw frequency; requires noise off. Makes
  // the pipeline reproduce exact mining, which is the oracle-agreement
  // check.
  bool exhaustive = false;
  // Recycle dataset records under fresh owner ids once the population is
  // used up. Off by default; flagged in results when enabled.
  bool with_replacement = false;

  void validate() const;
};

struct RoundStats {
  int round = 0;
  std::size_t candidates = 0;
  std::size_t fresh_owners = 0;
  std::size_t reused_owners = 0;
  int accepts = 0;
  int rejects = 0;
  int holds = 0;
};

struct ExperimentResult {
  std::set<Pattern> mined;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t truth_size = 0;
  std::size_t unique_owners = 0;
  int rounds = 0;
  std::vector<RoundStats> round_stats;
  bool exhausted = false;         // owner supply ran out; mining is partial
  bool with_replacement = false;  // owners were recycled
};

struct F1Scores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Precision/recall/F1 between mined and ground truth. Empty-set
// conventions: empty mined scores precision 1 against empty truth and 0
// otherwise; empty truth scores recall 1; F1 is 0 when both are 0.
F1Scores f1_score(const std::set<Pattern>& mined,
                  const std::set<Pattern>& truth);

ExperimentResult run_experiment(const ExperimentConfig& config,
                                const std::vector<LocalData>& dataset);

struct StrategyOutcome {
  Strategy strategy;
  ExperimentResult result;
  double owner_reduction_vs_vanilla_pct = 0.0;
};

// Runs the same experiment (identical seed and dataset) once per
// strategy and reports owner savings relative to vanilla. Vanilla is
// always included.
std::vector<StrategyOutcome> compare_strategies(
    const ExperimentConfig& base, const std::vector<LocalData>& dataset,
    const std::vector<Strategy>& strategies);

}  // namespace fedmine

#endif  // FEDMINE_RUNTIME_HPP_

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

#include "fedmine/report.hpp"

#include <charconv>
#include <sstream>

#ifndef FEDMINE_BUILD_ID
#define FEDMINE_BUILD_ID "unknown"
#endif

namespace fedmine {

std::string build_identifier() { return FEDMINE_BUILD_ID; }

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

nlohmann::ordered_json make_run_report(const ExperimentConfig& config,
                                       const nlohmann::ordered_json& dataset_info,
                                       const ExperimentResult& result) {
  nlohmann::ordered_json report;
  report["schema_version"] = kReportSchemaVersion;
  report["build"] = build_identifier();

  nlohmann::ordered_json cfg;
  cfg["kind"] = to_string(config.universe.kind);
  cfg["f"] = config.analyst.target_frequency;
  cfg["epsilon"] = config.analyst.noise.epsilon;
  cfg["K"] = config.analyst.noise.k_budget;
  cfg["P"] = config.analyst.noise.responders;
  cfg["tau"] = config.analyst.response_cap;
  cfg["eta_g"] = config.analyst.eta_geometric;
  cfg["eta_s"] = config.analyst.eta_sampling;
  cfg["strategy"] = to_string(config.analyst.strategy);
  cfg["seed"] = config.seed;
  cfg["universe"] = config.universe.size;
  cfg["max_length"] = config.universe.max_length;
  if (config.owner_cap.has_value()) {
    cfg["owner_cap"] = *config.owner_cap;
  } else {
    cfg["owner_cap"] = nullptr;
  }
  cfg["secure_agg_degree"] = config.secure_agg_degree;
  cfg["noise"] = config.noise_enabled;
  cfg["exhaustive"] = config.exhaustive;
  cfg["with_replacement"] = config.with_replacement;
  cfg["dataset"] = dataset_info;
  report["config"] = cfg;

  nlohmann::ordered_json res;
  nlohmann::ordered_json mined = nlohmann::ordered_json::array();
  for (const Pattern& p : result.mined) mined.push_back(p.to_string());
  res["mined"] = mined;
  res["precision"] = result.precision;
  res["recall"] = result.recall;
  res["f1"] = result.f1;
  res["truth_size"] = result.truth_size;
  res["unique_owners"] = result.unique_owners;
  res["rounds"] = result.rounds;
  res["exhausted"] = result.exhausted;
  res["with_replacement"] = result.with_replacement;
  nlohmann::ordered_json rounds = nlohmann::ordered_json::array();
  for (const RoundStats& stats : result.round_stats) {
    nlohmann::ordered_json row;
    row["t"] = stats.round;
    row["candidates"] = stats.candidates;
    row["fresh"] = stats.fresh_owners;
    row["reused"] = stats.reused_owners;
    row["accepts"] = stats.accepts;
    row["rejects"] = stats.rejects;
    row["holds"] = stats.holds;
    rounds.push_back(std::move(row));
  }
  res["rounds_detail"] = rounds;
  report["result"] = res;
  return report;
}

std::string csv_header() {
  return "f,epsilon,K,P,tau,strategy,f1,precision,recall,owners,rounds,seed,"
         "status";
}

std::string csv_row(const ExperimentConfig& config,
                    const ExperimentResult& result, const std::string& status) {
  std::ostringstream row;
  row << format_double(config.analyst.target_frequency) << ','
      << format_double(config.analyst.noise.epsilon) << ','
      << config.analyst.noise.k_budget << ','
      << config.analyst.noise.responders << ',' << config.analyst.response_cap
      << ',' << to_string(config.analyst.strategy) << ','
      << format_double(result.f1) << ',' << format_double(result.precision)
      << ',' << format_double(result.recall) << ',' << result.unique_owners
      << ',' << result.rounds << ',' << config.seed << ',' << status;
  return row.str();
}

}  // namespace fedmine

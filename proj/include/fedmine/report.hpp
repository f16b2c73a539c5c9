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

#ifndef FEDMINE_REPORT_HPP_
#define FEDMINE_REPORT_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "fedmine/runtime.hpp"

namespace fedmine {

inline constexpr int kReportSchemaVersion = 1;

// Identifier baked in at build time (git describe) for provenance.
std::string build_identifier();

// Shortest round-tripping decimal form of a double.
std::string format_double(double value);

// Self-contained machine-readable record of one experiment: schema
// version, build id, the full effective configuration (every default
// spelled out), dataset provenance, and the result with per-round stats.
// Contains nothing non-deterministic, so identical runs serialize to
// identical bytes.
nlohmann::ordered_json make_run_report(const ExperimentConfig& config,
                                       const nlohmann::ordered_json& dataset_info,
                                       const ExperimentResult& result);

// Flat CSV companion. The column set is identical for every command.
std::string csv_header();
std::string csv_row(const ExperimentConfig& config,
                    const ExperimentResult& result, const std::string& status);

}  // namespace fedmine

#endif  // FEDMINE_REPORT_HPP_

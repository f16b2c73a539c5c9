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

#ifndef FEDMINE_DATA_HPP_
#define FEDMINE_DATA_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fedmine/pattern.hpp"
#include "fedmine/rng.hpp"

namespace fedmine {

struct DatasetLoadResult {
  std::vector<LocalData> owners;
  // token -> dense id, in id order. When every token in the file is a
  // non-negative integer the tokens are used as ids directly and this is
  // the identity over the ids seen.
  std::vector<std::pair<std::string, ItemId>> id_map;
  std::uint32_t universe_size = 0;
};

// Plain text, one owner per line, whitespace-separated item tokens.
// Empty lines are skipped; CRLF accepted; duplicate tokens collapse for
// item/itemset data and are preserved in order for sequences. Parse
// problems report the offending line number.
DatasetLoadResult load_dataset(const std::filesystem::path& path,
                               PatternKind kind);

void write_dataset(const std::filesystem::path& path,
                   const std::vector<LocalData>& owners);

void write_id_map(const std::filesystem::path& path,
                  const std::vector<std::pair<std::string, ItemId>>& id_map);

// Synthetic population: each owner independently receives each planted
// pattern with its target probability, then Zipf-distributed background
// items (a Poisson-distributed count of draws). Planted sequences are
// spliced in as contiguous runs at uniform positions.
struct SyntheticSpec {
  std::size_t owner_count = 0;
  std::uint32_t universe_size = 0;
  PatternKind kind = PatternKind::kItemset;
  double zipf_exponent = 1.1;
  double background_mean = 8.0;
  std::vector<std::pair<Pattern, double>> planted;

  void validate() const;
};

std::vector<LocalData> generate_synthetic(const SyntheticSpec& spec, Rng& rng);

}  // namespace fedmine

#endif  // FEDMINE_DATA_HPP_

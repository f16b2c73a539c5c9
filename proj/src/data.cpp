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

#include "fedmine/data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fedmine {

namespace {

bool parse_numeric_token(const std::string& token, ItemId& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

DatasetLoadResult load_dataset(const std::filesystem::path& path,
                               PatternKind kind) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open dataset file: " + path.string());
  }
  DatasetLoadResult result;
  std::map<ItemId, std::string> tokens_seen;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream tokens(line);
    std::vector<ItemId> payload;
    std::string token;
    while (tokens >> token) {
      ItemId id = 0;
      if (!parse_numeric_token(token, id)) {
        throw std::runtime_error("unparseable token '" + token + "' at line " +
                                 std::to_string(line_number) + " of " +
                                 path.string());
      }
      tokens_seen.emplace(id, token);
      payload.push_back(id);
    }
    if (payload.empty()) continue;  // skip empty lines
    result.owners.push_back(LocalData::of(kind, std::move(payload)));
  }
  for (auto& [id, token] : tokens_seen) {
    result.id_map.emplace_back(std::move(token), id);
  }
  result.universe_size =
      tokens_seen.empty() ? 0 : tokens_seen.rbegin()->first + 1;
  return result;
}

void write_dataset(const std::filesystem::path& path,
                   const std::vector<LocalData>& owners) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path.string());
  }
  for (const LocalData& owner : owners) {
    const auto& payload = owner.payload();
    for (std::size_t i = 0; i < payload.size(); ++i) {
      if (i > 0) out << ' ';
      out << payload[i];
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("failed writing dataset: " + path.string());
  }
}

void write_id_map(const std::filesystem::path& path,
                  const std::vector<std::pair<std::string, ItemId>>& id_map) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path.string());
  }
  for (const auto& [token, id] : id_map) {
    out << token << ' ' << id << '\n';
  }
}

void SyntheticSpec::validate() const {
  if (owner_count == 0) {
    throw std::invalid_argument("synthetic spec needs at least one owner");
  }
  if (universe_size == 0) {
    throw std::invalid_argument("synthetic universe must be non-empty");
  }
  if (!(zipf_exponent > 0.0)) {
    throw std::invalid_argument("Zipf exponent must be positive");
  }
  if (background_mean < 0.0) {
    throw std::invalid_argument("background mean must be non-negative");
  }
  for (const auto& [pattern, frequency] : planted) {
    if (pattern.kind() != kind) {
      throw std::invalid_argument("planted pattern kind mismatch");
    }
    if (!(frequency > 0.0) || !(frequency < 1.0)) {
      throw std::invalid_argument("planted frequencies must be in (0,1)");
    }
    for (ItemId id : pattern.elements()) {
      if (id >= universe_size) {
        throw std::invalid_argument("planted pattern outside the universe");
      }
    }
  }
}

namespace {

// Inverse-CDF Zipf sampler over ranks 1..n mapped to ids 0..n-1.
class ZipfSampler {
 public:
  ZipfSampler(std::uint32_t n, double exponent) {
    cumulative_.reserve(n);
    double total = 0.0;
    for (std::uint32_t k = 1; k <= n; ++k) {
      total += std::pow(static_cast<double>(k), -exponent);
      cumulative_.push_back(total);
    }
    // Degenerate exponents can underflow every term past the first.
    if (total <= 0.0) cumulative_.assign(1, 1.0);
    for (double& c : cumulative_) c /= total > 0.0 ? total : 1.0;
    cumulative_.back() = 1.0;
  }

  ItemId operator()(Rng& rng) const {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double u = uniform(rng);
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    return static_cast<ItemId>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace

std::vector<LocalData> generate_synthetic(const SyntheticSpec& spec, Rng& rng) {
  spec.validate();
  ZipfSampler zipf(spec.universe_size, spec.zipf_exponent);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::poisson_distribution<int> background_len(
      spec.background_mean > 0.0 ? spec.background_mean : 1e-12);

  std::vector<LocalData> owners;
  owners.reserve(spec.owner_count);
  for (std::size_t o = 0; o < spec.owner_count; ++o) {
    std::vector<ItemId> payload;
    if (spec.kind == PatternKind::kSequence) {
      int background = spec.background_mean > 0.0 ? background_len(rng) : 0;
      for (int i = 0; i < background; ++i) payload.push_back(zipf(rng));
      for (const auto& [pattern, frequency] : spec.planted) {
        if (uniform(rng) >= frequency) continue;
        std::uniform_int_distribution<std::size_t> position(0, payload.size());
        const std::size_t at = position(rng);
        payload.insert(payload.begin() + static_cast<std::ptrdiff_t>(at),
                       pattern.elements().begin(), pattern.elements().end());
      }
      if (payload.empty()) payload.push_back(zipf(rng));
    } else {
      for (const auto& [pattern, frequency] : spec.planted) {
        if (uniform(rng) < frequency) {
          payload.insert(payload.end(), pattern.elements().begin(),
                         pattern.elements().end());
        }
      }
      int background = spec.background_mean > 0.0 ? background_len(rng) : 0;
      for (int i = 0; i < background; ++i) payload.push_back(zipf(rng));
      if (payload.empty()) payload.push_back(zipf(rng));
    }
    owners.push_back(LocalData::of(spec.kind, std::move(payload)));
  }
  return owners;
}

}  // namespace fedmine

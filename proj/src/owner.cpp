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

#include "fedmine/owner.hpp"

#include <set>
#include <stdexcept>

namespace fedmine {

void CandidateAssignment::validate() const {
  std::set<std::size_t> seen;
  for (const Entry& entry : entries) {
    if (entry.index >= round_vector_len) {
      throw std::invalid_argument("assignment index out of range");
    }
    if (!seen.insert(entry.index).second) {
      throw std::invalid_argument("duplicate index in assignment");
    }
  }
}

ResponseVector respond(const LocalData& data,
                       const CandidateAssignment& assignment,
                       const NoiseParams& noise, Rng& rng) {
  if (assignment.entries.size() > static_cast<std::size_t>(noise.k_budget)) {
    throw std::invalid_argument("assignment exceeds the K-candidate budget");
  }
  assignment.validate();
  ResponseVector out;
  out.entries.assign(assignment.round_vector_len, 0);
  for (const auto& entry : assignment.entries) {
    std::int64_t value = contains(data, entry.pattern) ? 1 : 0;
    value += sample_owner_noise(noise, rng);
    out.entries[entry.index] = value;
  }
  return out;
}

ResponseVector respond_noiseless(const LocalData& data,
                                 const CandidateAssignment& assignment) {
  assignment.validate();
  ResponseVector out;
  out.entries.assign(assignment.round_vector_len, 0);
  for (const auto& entry : assignment.entries) {
    out.entries[entry.index] = contains(data, entry.pattern) ? 1 : 0;
  }
  return out;
}

}  // namespace fedmine

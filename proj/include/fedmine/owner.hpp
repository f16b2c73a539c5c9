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

#ifndef FEDMINE_OWNER_HPP_
#define FEDMINE_OWNER_HPP_

#include <cstdint>
#include <vector>

#include "fedmine/noise.hpp"
#include "fedmine/pattern.hpp"
#include "fedmine/rng.hpp"

namespace fedmine {

// The candidates one owner must respond to in a round, addressed by
// their round-global indices in [0, round_vector_len).
struct CandidateAssignment {
  struct Entry {
    std::size_t index;
    Pattern pattern;
  };

  std::vector<Entry> entries;
  std::size_t round_vector_len = 0;

  void validate() const;  // distinct in-range indices
};

// One owner's response for a round: zero at unassigned indices, the
// containment indicator plus noise at assigned ones.
struct ResponseVector {
  std::vector<std::int64_t> entries;
};

// The data-owner response procedure. Per assigned index i the entry is
// 1 + X - Y when the candidate occurs in the local data and X - Y when
// it does not, with X, Y fresh i.i.d. Polya(1/P, alpha) draws per index;
// unassigned indices stay exactly zero and are protected by masking, not
// noise. Throws when the assignment exceeds the K-candidate budget or
// the candidate kind does not match the data.
ResponseVector respond(const LocalData& data,
                       const CandidateAssignment& assignment,
                       const NoiseParams& noise, Rng& rng);

// Noise-free variant used by the exhaustive oracle-agreement mode; no
// budget applies since no privacy is being accounted.
ResponseVector respond_noiseless(const LocalData& data,
                                 const CandidateAssignment& assignment);

}  // namespace fedmine

#endif  // FEDMINE_OWNER_HPP_

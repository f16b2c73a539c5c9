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

#ifndef FEDMINE_RNG_HPP_
#define FEDMINE_RNG_HPP_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fedmine {

// All randomness in the simulator flows through explicitly seeded
// generators so that a run is a pure function of its seed.
using Rng = std::mt19937_64;

// splitmix64 finalizer (Steele, Lea, Flood). Used to spread correlated
// seed words before they reach an engine.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Folds a base seed with a list of stream identifiers (owner id, round
// index, purpose tag, ...) into an independent stream seed.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> words) {
  std::uint64_t z = splitmix64(base);
  for (std::uint64_t w : words) {
    z = splitmix64(z ^ splitmix64(w));
  }
  return z;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace fedmine

#endif  // FEDMINE_RNG_HPP_

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

#ifndef FEDMINE_NOISE_HPP_
#define FEDMINE_NOISE_HPP_

#include <cstdint>

#include "fedmine/rng.hpp"

namespace fedmine {

// Parameters of the Polya (negative binomial with real-valued shape)
// distribution: P(X = x) = Gamma(r+x) / (Gamma(r) x!) * p^x * (1-p)^r.
struct PolyaParams {
  double shape;    // r > 0
  double success;  // p in (0, 1)

  PolyaParams(double r, double p);  // throws std::invalid_argument
};

// Per-experiment privacy configuration. Each data owner responds to at
// most `k_budget` candidates over its whole lifetime, splitting its
// epsilon budget evenly, and each candidate collects `responders`
// responses per round. alpha() = exp(-epsilon / k_budget) is always
// derived, never stored, so it cannot drift out of sync.
struct NoiseParams {
  double epsilon = 2.0;  // > 0
  int k_budget = 50;     // K >= 1, max distinct candidates per owner
  int responders = 1000; // P >= 1, responses per candidate per round

  void validate() const;  // throws std::invalid_argument

  double alpha() const;
  // The per-owner noise share: Polya(1/P, alpha).
  PolyaParams owner_polya() const;
};

// P(X = x) for Polya(r, p), computed in log space.
double polya_pmf(const PolyaParams& params, std::int64_t x);

// Two-sided geometric PMF: ((1 - alpha) / (1 + alpha)) * alpha^|x|.
// The sum of P independent differences of Polya(1/P, alpha) pairs is
// distributed exactly like this; variance is 2*alpha / (1-alpha)^2.
double geometric_pmf(double alpha, std::int64_t x);

// Draws from Polya(r, p) via the Poisson-Gamma mixture: gamma with shape
// r and scale p/(1-p), then Poisson with that mean.
std::int64_t sample_polya(const PolyaParams& params, Rng& rng);

// One owner's noise share X - Y with X, Y i.i.d. Polya(1/P, alpha).
std::int64_t sample_owner_noise(const NoiseParams& params, Rng& rng);

}  // namespace fedmine

#endif  // FEDMINE_NOISE_HPP_

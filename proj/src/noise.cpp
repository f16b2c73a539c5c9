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

#include "fedmine/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace fedmine {

PolyaParams::PolyaParams(double r, double p) : shape(r), success(p) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("Polya shape must be positive and finite");
  }
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::invalid_argument("Polya success probability must be in (0,1)");
  }
}

void NoiseParams::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be positive and finite");
  }
  if (k_budget < 1) {
    throw std::invalid_argument("candidate budget K must be >= 1");
  }
  if (responders < 1) {
    throw std::invalid_argument("responder count P must be >= 1");
  }
}

double NoiseParams::alpha() const { return std::exp(-epsilon / k_budget); }

PolyaParams NoiseParams::owner_polya() const {
  return PolyaParams(1.0 / responders, alpha());
}

double polya_pmf(const PolyaParams& params, std::int64_t x) {
  if (x < 0) return 0.0;
  const double r = params.shape;
  const double p = params.success;
  // log of Gamma(r+x) / (Gamma(r) x!) * p^x * (1-p)^r
  const double log_pmf = std::lgamma(r + static_cast<double>(x)) -
                         std::lgamma(r) -
                         std::lgamma(static_cast<double>(x) + 1.0) +
                         static_cast<double>(x) * std::log(p) +
                         r * std::log1p(-p);
  return std::exp(log_pmf);
}

double geometric_pmf(double alpha, std::int64_t x) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha must be in (0,1)");
  }
  return (1.0 - alpha) / (1.0 + alpha) *
         std::pow(alpha, std::abs(static_cast<double>(x)));
}

std::int64_t sample_polya(const PolyaParams& params, Rng& rng) {
  std::gamma_distribution<double> gamma(params.shape,
                                        params.success / (1.0 - params.success));
  const double mean = gamma(rng);
  // Tiny shapes underflow the gamma draw to exactly zero; the mixture
  // then degenerates to a point mass at zero.
  if (mean <= 0.0) return 0;
  std::poisson_distribution<std::int64_t> poisson(mean);
  return poisson(rng);
}

std::int64_t sample_owner_noise(const NoiseParams& params, Rng& rng) {
  const PolyaParams polya = params.owner_polya();
  const std::int64_t x = sample_polya(polya, rng);
  const std::int64_t y = sample_polya(polya, rng);
  return x - y;
}

}  // namespace fedmine

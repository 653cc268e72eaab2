// Copyright 2026 The Unicert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unicert/random.hpp"

#include <algorithm>
#include <boost/random/binomial_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <numeric>

#include "unicert/errors.hpp"

namespace unicert {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) noexcept {
  return mix64(mix64(parent) ^ (tag * 0xd1342543de82ef95ULL + 1));
}

double uniform01(Rng& rng) {
  boost::random::uniform_01<double> dist;
  return dist(rng);
}

double standard_normal(Rng& rng) {
  boost::random::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

std::int64_t binomial(Rng& rng, std::int64_t trials, double p) {
  if (trials < 0 || !(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("binomial parameters out of range");
  }
  if (trials == 0 || p == 0.0) return 0;
  if (p == 1.0) return trials;
  boost::random::binomial_distribution<std::int64_t, double> dist(trials, p);
  return dist(rng);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> multinomial(
    Rng& rng, std::uint64_t trials, std::span<const double> probabilities) {
  double remaining_mass = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw ArgumentError("negative probability");
    remaining_mass += p;
  }
  if (!(remaining_mass > 0.0)) {
    throw ArgumentError("probabilities sum to zero");
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  auto remaining = static_cast<std::int64_t>(trials);
  // Index of the last positive cell absorbs whatever is left, so rounding in
  // the running mass can never lose draws.
  std::size_t last = probabilities.size();
  while (last > 0 && probabilities[last - 1] <= 0.0) --last;
  for (std::size_t i = 0; i < last && remaining > 0; ++i) {
    const double p = probabilities[i];
    if (p <= 0.0) continue;
    std::int64_t k;
    if (i + 1 == last) {
      k = remaining;
    } else {
      const double q = std::clamp(p / remaining_mass, 0.0, 1.0);
      k = binomial(rng, remaining, q);
    }
    if (k > 0) out.emplace_back(i, static_cast<std::uint64_t>(k));
    remaining -= k;
    remaining_mass -= p;
    if (remaining_mass <= 0.0) remaining_mass = 0.0;
  }
  return out;
}

}  // namespace unicert

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

// Seeding and sampling primitives.
//
// Every random stream is a std::mt19937_64 (fully specified by the C++
// standard) seeded with a 64-bit value. Child streams are derived with
// derive_seed(parent, tag), a SplitMix64 mix, so a command -> module -> trial
// hierarchy of seeds can be reproduced piecewise. Distributions come from
// Boost.Random, whose algorithms are header-defined and therefore do not vary
// with the standard library implementation.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace unicert {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the child stream `tag` of `parent`.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) noexcept;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Uniform double in [0, 1).
double uniform01(Rng& rng);

/// Standard normal deviate.
double standard_normal(Rng& rng);

/// Binomial(trials, p) deviate; exact for any trials < 2^62.
std::int64_t binomial(Rng& rng, std::int64_t trials, double p);

/// Multinomial counts for `trials` draws from `probabilities` (which need not
/// be normalized exactly; they are rescaled by their sum). Returns only the
/// nonzero cells as (index, count), in increasing index order.
std::vector<std::pair<std::uint64_t, std::uint64_t>> multinomial(
    Rng& rng, std::uint64_t trials, std::span<const double> probabilities);

}  // namespace unicert

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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <tuple>

#include "unicert/certify.hpp"
#include "unicert/errors.hpp"
#include "unicert/parallel.hpp"
#include "unicert/random.hpp"

namespace unicert {
namespace {

constexpr double kWilsonZ = 1.959964;

// Seed tag of the admixed state, disjoint from trial indices.
constexpr std::uint64_t kAdmixtureTag = 0x8000000000000000ULL;

}  // namespace

const char* to_string(FidelityRegime r) {
  switch (r) {
    case FidelityRegime::High: return "high";
    case FidelityRegime::Low: return "low";
    default: return "intermediate";
  }
}

FidelityRegime regime_of(const MonteCarloPoint& point) {
  const double n = static_cast<double>(point.n);
  if (point.fidelity >= 1.0 - point.epsilon) return FidelityRegime::High;
  if (point.fidelity < 1.0 - 8.0 * n * std::sqrt(point.epsilon)) {
    return FidelityRegime::Low;
  }
  return FidelityRegime::Intermediate;
}

std::pair<double, double> wilson_interval(std::size_t successes,
                                          std::size_t trials) {
  if (trials == 0 || successes > trials) {
    throw ArgumentError("Wilson interval needs 0 <= successes <= trials > 0");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      kWilsonZ * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::size_t worker_threads() {
  if (const char* env = std::getenv("UNICERT_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // Fall through to the hardware default.
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<MonteCarloRow> monte_carlo_validation(
    const std::vector<MonteCarloPoint>& grid, std::size_t trials,
    std::uint64_t seed) {
  if (grid.empty()) throw ArgumentError("Monte Carlo grid is empty");
  if (trials < 100) throw ArgumentError("at least 100 trials per point");
  const std::size_t workers = worker_threads();

  std::vector<MonteCarloRow> rows;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const MonteCarloPoint& point = grid[p];
    if (!(point.fidelity >= 0.0 && point.fidelity <= 1.0)) {
      throw ArgumentError("fidelity must lie in [0, 1]");
    }
    const GraphSpec graph = GraphSpec::path(point.n);
    const CertificationPlan plan = make_certification_plan(graph);
    validate({point.epsilon, 0, 0}, point.n);

    const std::uint64_t point_seed = derive_seed(seed, p);
    const StateVector psi = prepare_graph_state(graph);
    MixedStateEnsemble rho = MixedStateEnsemble::pure(psi);
    if (point.fidelity < 1.0) {
      Rng rng = make_rng(derive_seed(point_seed, kAdmixtureTag));
      rho = orthogonal_mixture(psi, 1.0 - point.fidelity,
                               random_state(point.n, rng));
    }
    const EnsembleSource source(std::move(rho));

    MonteCarloRow row;
    row.point = point;
    row.regime = regime_of(point);
    row.trials = trials;
    row.verdicts.assign(trials, Verdict::Failed);
    parallel_for(trials, workers, [&](std::size_t t) {
      const CertificationConfig config{point.epsilon, 0, derive_seed(point_seed, t)};
      row.verdicts[t] = certify(source, plan, config).verdict;
    });
    row.certified = static_cast<std::size_t>(
        std::count(row.verdicts.begin(), row.verdicts.end(), Verdict::Certified));
    row.certified_rate =
        static_cast<double>(row.certified) / static_cast<double>(trials);
    std::tie(row.wilson_lo, row.wilson_hi) = wilson_interval(row.certified, trials);
    const double half = (row.wilson_hi - row.wilson_lo) / 2.0;
    switch (row.regime) {
      case FidelityRegime::High:
        row.consistent = row.certified_rate >= 2.0 / 3.0 - half;
        break;
      case FidelityRegime::Low:
        row.consistent = row.certified_rate <= 1.0 / 3.0 + half;
        break;
      case FidelityRegime::Intermediate:
        row.consistent = true;
        break;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace unicert

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

// Certification of bipartite even-degree graph states from uniform x-z plane
// measurements.
//
// A target graph G with a two-colouring (A, B) in which every vertex of A has
// even degree has the symmetry U_X = prod_{v in B} X_v. The protocol measures
// a few uniform bases, estimates <U_X> and, for every vertex v,
//   M_v = sum_{v' in N[v]} X_{v'} prod_{v'' in N[v], v'' != v'} Z_{v''},
// the symmetric sum with one X on the closed neighbourhood N[v]. It reports
// Failed if the U_X estimate falls below 1 - 13 eps / 4 and otherwise
// Certified exactly when every M_v estimate exceeds 1 - 9 sqrt(eps).

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "unicert/pauli.hpp"
#include "unicert/stabilizer.hpp"
#include "unicert/statevector.hpp"

namespace unicert {

/// M_v for every vertex, in vertex order. Throws NotCertifiableError naming
/// the offending vertex when the graph has no even-degree bipartition.
std::vector<PauliSum> stabilizer_combinations(const GraphSpec& graph);

/// One uniform measurement basis in the x-z plane.
struct PlannedBasis {
  double theta = 0.0;  // direction (sin theta, 0, cos theta)
  MeasurementDirection direction{1.0, 0.0, 0.0};
  std::string label;
};

/// M_v estimate = sum over terms of weight * mean product of outcomes on the
/// support, read from the distribution of basis `basis`.
struct VertexEstimator {
  std::size_t vertex = 0;
  std::vector<std::size_t> support;
  std::vector<std::pair<std::size_t, double>> terms;  // (basis index, weight)

  /// Largest |per-shot value| of this estimator.
  double range() const;
};

struct CertificationPlan {
  GraphSpec graph;
  std::vector<std::size_t> symmetry_side;  // B
  std::vector<PlannedBasis> bases;
  std::size_t x_basis = 0;  // index of the x basis within `bases`
  std::vector<VertexEstimator> estimators;
  bool path_schedule = false;  // the three fixed path bases are in use
};

/// Odd paths with N >= 3 use the bases x, (x+z)/sqrt2, (x-z)/sqrt2. Any other
/// certifiable graph uses x plus, for every distinct closed-neighbourhood
/// size k, the angles pi (j + 1/2) / (k + 1), merged when equal.
CertificationPlan make_certification_plan(const GraphSpec& graph);

/// Coefficients of the fixed path estimators, derived from the
/// decomposition and checked against the closed forms.
struct PathEstimatorConstants {
  double interior_plus_minus = 0.0;  // weight of the (x+z) and (x-z) triples
  double interior_x = 0.0;           // weight of the x triple
  double boundary = 0.0;             // weight c in c (b+b+ - b-b-)
};

/// Computed once; throws std::logic_error if the closed forms sqrt2, -1 and 1
/// disagree with the decomposition by more than 1e-12.
const PathEstimatorConstants& path_estimator_constants();

enum class Verdict { Certified, Failed };
const char* to_string(Verdict v);

/// Thresholds as used by the decision rule.
double symmetry_threshold(double epsilon);    // 1 - 13 eps / 4
double combination_threshold(double epsilon); // 1 - 9 sqrt(eps)

/// Failed if u_hat < 1 - 13 eps/4; otherwise Certified iff every
/// m_hat > 1 - 9 sqrt(eps).
Verdict decide(double u_hat, const std::vector<double>& m_hat, double epsilon);

/// ceil(32 ln 12 / (25 eps^2)). Throws ArgumentError for eps <= 0 or when the
/// count would not fit in 63 bits.
std::uint64_t default_shot_count(double epsilon);

struct CertificationConfig {
  double epsilon = 0.0;
  std::uint64_t shots = 0;  // per basis; 0 selects default_shot_count
  std::uint64_t seed = 0;
};

/// Throws ConfigurationError unless 0 < eps < 1/(64 N^2).
void validate(const CertificationConfig& config, std::size_t num_qubits);

struct Estimates {
  double u_hat = 0.0;
  std::vector<double> m_hat;
};

/// Evaluates the plan's estimators. `distributions` is aligned with
/// plan.bases; all must share N and, when sampled, the shot count.
Estimates estimate_from_distributions(
    const CertificationPlan& plan,
    const std::vector<OutcomeDistribution>& distributions);

/// Infinite-shot estimates (exact Born distributions).
Estimates exact_estimates(const CertificationPlan& plan,
                          const MixedStateEnsemble& rho);

/// Provider of outcome statistics for one basis.
class MeasurementSource {
 public:
  virtual ~MeasurementSource() = default;
  virtual std::size_t num_qubits() const = 0;
  virtual OutcomeDistribution measure(const MeasurementDirection& direction,
                                      std::uint64_t shots,
                                      std::uint64_t seed) const = 0;
};

/// Samples a simulated ensemble. Histogram mode draws the T shots as one
/// multinomial over the cached Born distribution; per-shot mode draws every
/// shot explicitly. Both have the same law. Safe to share between threads.
class EnsembleSource final : public MeasurementSource {
 public:
  enum class Mode { Histogram, PerShot };

  explicit EnsembleSource(MixedStateEnsemble rho, Mode mode = Mode::Histogram);

  std::size_t num_qubits() const override { return rho_.num_qubits(); }
  OutcomeDistribution measure(const MeasurementDirection& direction,
                              std::uint64_t shots,
                              std::uint64_t seed) const override;
  const MixedStateEnsemble& ensemble() const noexcept { return rho_; }

 private:
  std::shared_ptr<const std::vector<double>> probabilities(
      const MeasurementDirection& direction) const;

  MixedStateEnsemble rho_;
  Mode mode_;
  mutable std::mutex mutex_;
  mutable std::map<std::array<double, 3>,
                   std::shared_ptr<const std::vector<double>>>
      cache_;
};

/// Replays recorded data; the seed is ignored. Throws ArgumentError if no
/// record matches the direction (within 1e-9) or the shot count differs.
class RecordSource final : public MeasurementSource {
 public:
  explicit RecordSource(std::vector<MeasurementRecord> records);

  std::size_t num_qubits() const override;
  OutcomeDistribution measure(const MeasurementDirection& direction,
                              std::uint64_t shots,
                              std::uint64_t seed) const override;
  std::uint64_t shots() const;

 private:
  std::vector<MeasurementRecord> records_;
};

struct CertificationReport {
  Verdict verdict = Verdict::Failed;
  double u_hat = 0.0;
  std::vector<double> m_hat;
  double epsilon = 0.0;
  double u_threshold = 0.0;
  double m_threshold = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t default_shots = 0;
  bool shots_overridden = false;  // shots below the default
  std::uint64_t seed = 0;
  std::vector<PlannedBasis> bases;
  std::vector<std::size_t> symmetry_side;
  GraphSpec graph;
};

/// Runs the protocol. Basis i is sampled with seed derive_seed(seed, i).
CertificationReport certify(const MeasurementSource& source,
                            const GraphSpec& target,
                            const CertificationConfig& config);
CertificationReport certify(const MeasurementSource& source,
                            const CertificationPlan& plan,
                            const CertificationConfig& config);

/// If <U_X> >= 1 - eps, every Pauli anticommuting with U_X has
/// |<P>| <= sqrt(2 eps). Returns sqrt(2 (1 - u)) (0 for u >= 1).
double anticommuting_expectation_bound(double u_expectation);

/// F >= 1 - sum_i (1 - e_i) / 2 for generator expectations e_i.
double fidelity_lower_bound_from_generators(const std::vector<double>& generator_expectations);

/// Every stabilizer group element has <P> >= 1 - 2 sqrt(1 - F).
double group_element_lower_bound(double fidelity);

/// F <= 1 - (1 - <U_X>) / 2.
double fidelity_upper_bound_from_symmetry(double u_expectation);

/// One grid point of the Monte Carlo validation.
struct MonteCarloPoint {
  std::size_t n = 0;          // path length (odd)
  double epsilon = 0.0;
  double fidelity = 1.0;      // 1 = ideal graph state
};

enum class FidelityRegime { High, Low, Intermediate };
const char* to_string(FidelityRegime r);

/// High when F >= 1 - eps, Low when F < 1 - 8 N sqrt(eps).
FidelityRegime regime_of(const MonteCarloPoint& point);

struct MonteCarloRow {
  MonteCarloPoint point;
  FidelityRegime regime = FidelityRegime::Intermediate;
  std::size_t trials = 0;
  std::size_t certified = 0;
  double certified_rate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  /// High: rate >= 2/3 - halfwidth. Low: rate <= 1/3 + halfwidth.
  /// Intermediate: always true.
  bool consistent = true;
  std::vector<Verdict> verdicts;  // by trial index
};

/// Wilson score interval at 95% (z = 1.959964).
std::pair<double, double> wilson_interval(std::size_t successes,
                                          std::size_t trials);

/// Runs `trials` independent certifications per point on the ideal path
/// graph state (fidelity 1) or an orthogonal mixture with the requested
/// fidelity. Trial t of point p uses seed derive_seed(derive_seed(seed, p), t).
/// Trials run on UNICERT_THREADS workers (default: hardware concurrency);
/// results do not depend on the worker count. Throws ArgumentError for
/// trials < 100 or an empty grid.
std::vector<MonteCarloRow> monte_carlo_validation(
    const std::vector<MonteCarloPoint>& grid, std::size_t trials,
    std::uint64_t seed);

}  // namespace unicert

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

#include "unicert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "unicert/errors.hpp"
#include "unicert/random.hpp"

namespace unicert {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTolerance = 1e-12;

EvenDegreeBipartition require_bipartition(const GraphSpec& graph) {
  std::size_t offending = 0;
  std::string reason;
  auto split = find_even_degree_bipartition(graph, &offending, &reason);
  if (!split) throw NotCertifiableError(offending, reason);
  return *split;
}

// Coefficient vector over alpha = 0..k of the uniform product at theta.
std::vector<double> decomposition_vector(std::size_t k, double theta) {
  std::vector<double> v(k + 1, 0.0);
  for (const auto& t : uniform_expectation_decomposition(k, theta)) {
    v[t.alpha] = t.coefficient;
  }
  return v;
}

PathEstimatorConstants derive_path_constants() {
  const double s2 = std::sqrt(2.0);
  PathEstimatorConstants c;

  // Interior: a (d(pi/4) + d(3pi/4)) + b d(pi/2) must select alpha = 2 of 3.
  const auto plus3 = decomposition_vector(3, kPi / 4);
  const auto minus3 = decomposition_vector(3, 3 * kPi / 4);
  const auto x3 = decomposition_vector(3, kPi / 2);
  std::vector<double> pm(4);
  for (std::size_t a = 0; a <= 3; ++a) pm[a] = plus3[a] + minus3[a];
  c.interior_plus_minus = 1.0 / pm[2];
  c.interior_x = -c.interior_plus_minus * pm[0] / x3[0];
  for (std::size_t a = 0; a <= 3; ++a) {
    const double got = c.interior_plus_minus * pm[a] + c.interior_x * x3[a];
    const double want = a == 2 ? 1.0 : 0.0;
    if (std::abs(got - want) > 1e-12) {
      throw std::logic_error("interior path estimator does not isolate alpha = 2");
    }
  }

  // Boundary: c (d(pi/4) - d(3pi/4)) must select alpha = 1 of 2.
  const auto plus2 = decomposition_vector(2, kPi / 4);
  const auto minus2 = decomposition_vector(2, 3 * kPi / 4);
  c.boundary = 1.0 / (plus2[1] - minus2[1]);
  for (std::size_t a = 0; a <= 2; ++a) {
    const double got = c.boundary * (plus2[a] - minus2[a]);
    const double want = a == 1 ? 1.0 : 0.0;
    if (std::abs(got - want) > 1e-12) {
      throw std::logic_error("boundary path estimator does not isolate alpha = 1");
    }
  }

  if (std::abs(c.interior_plus_minus - s2) > 1e-12 ||
      std::abs(c.interior_x + 1.0) > 1e-12 || std::abs(c.boundary - 1.0) > 1e-12) {
    throw std::logic_error("path estimator constants differ from sqrt2, -1, 1");
  }
  return c;
}

std::string theta_label(double theta) {
  std::ostringstream os;
  os.precision(17);
  os << "theta=" << theta;
  return os.str();
}

std::size_t find_or_add_basis(std::vector<PlannedBasis>& bases, double theta) {
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (std::abs(bases[i].theta - theta) < kAngleTolerance) return i;
  }
  bases.push_back({theta, MeasurementDirection::in_xz_plane(theta),
                   theta_label(theta)});
  return bases.size() - 1;
}

bool same_direction(const MeasurementDirection& a, const MeasurementDirection& b) {
  return std::abs(a.nx() - b.nx()) < 1e-9 && std::abs(a.ny() - b.ny()) < 1e-9 &&
         std::abs(a.nz() - b.nz()) < 1e-9;
}

}  // namespace

std::vector<PauliSum> stabilizer_combinations(const GraphSpec& graph) {
  require_bipartition(graph);
  const std::size_t n = graph.num_vertices();
  std::vector<PauliSum> out;
  out.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto hood = graph.closed_neighborhood(v);
    PauliSum sum;
    for (std::size_t x_site : hood) {
      PauliString p(n);
      for (std::size_t u : hood) p.set_letter(u, u == x_site ? 'X' : 'Z');
      sum.push_back({1.0, std::move(p)});
    }
    out.push_back(std::move(sum));
  }
  return out;
}

double VertexEstimator::range() const {
  double r = 0.0;
  for (const auto& [basis, weight] : terms) r += std::abs(weight);
  return r;
}

const PathEstimatorConstants& path_estimator_constants() {
  static const PathEstimatorConstants constants = derive_path_constants();
  return constants;
}

CertificationPlan make_certification_plan(const GraphSpec& graph) {
  const EvenDegreeBipartition split = require_bipartition(graph);
  const std::size_t n = graph.num_vertices();
  CertificationPlan plan;
  plan.graph = graph;
  plan.symmetry_side = split.symmetry_side;

  if (graph.is_path() && n >= 3 && n % 2 == 1) {
    const auto& c = path_estimator_constants();
    plan.path_schedule = true;
    plan.bases = {
        {kPi / 2, MeasurementDirection::in_xz_plane(kPi / 2), "x"},
        {kPi / 4, MeasurementDirection::in_xz_plane(kPi / 4), "x+z"},
        {3 * kPi / 4, MeasurementDirection::in_xz_plane(3 * kPi / 4), "x-z"},
    };
    plan.x_basis = 0;
    for (std::size_t v = 0; v < n; ++v) {
      VertexEstimator e;
      e.vertex = v;
      e.support = graph.closed_neighborhood(v);
      if (v == 0 || v + 1 == n) {
        e.terms = {{1, c.boundary}, {2, -c.boundary}};
      } else {
        e.terms = {{1, c.interior_plus_minus},
                   {2, c.interior_plus_minus},
                   {0, c.interior_x}};
      }
      plan.estimators.push_back(std::move(e));
    }
    return plan;
  }

  plan.bases.push_back({kPi / 2, MeasurementDirection::in_xz_plane(kPi / 2), "x"});
  plan.x_basis = 0;
  std::set<std::size_t> sizes;
  for (std::size_t v = 0; v < n; ++v) sizes.insert(graph.degree(v) + 1);
  std::map<std::size_t, std::vector<std::pair<std::size_t, double>>> terms_by_size;
  for (std::size_t k : sizes) {
    const std::vector<double> grid = default_theta_grid(k);
    const std::vector<double> w = symmetric_estimator_weights(k, grid, k - 1);
    auto& terms = terms_by_size[k];
    for (std::size_t j = 0; j < grid.size(); ++j) {
      terms.emplace_back(find_or_add_basis(plan.bases, grid[j]), w[j]);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    VertexEstimator e;
    e.vertex = v;
    e.support = graph.closed_neighborhood(v);
    e.terms = terms_by_size.at(e.support.size());
    plan.estimators.push_back(std::move(e));
  }
  return plan;
}

const char* to_string(Verdict v) {
  return v == Verdict::Certified ? "Certified" : "Failed";
}

double symmetry_threshold(double epsilon) { return 1.0 - 13.0 * epsilon / 4.0; }

double combination_threshold(double epsilon) {
  return 1.0 - 9.0 * std::sqrt(epsilon);
}

Verdict decide(double u_hat, const std::vector<double>& m_hat, double epsilon) {
  if (u_hat < symmetry_threshold(epsilon)) return Verdict::Failed;
  const double t = combination_threshold(epsilon);
  for (double m : m_hat) {
    if (!(m > t)) return Verdict::Failed;
  }
  return Verdict::Certified;
}

std::uint64_t default_shot_count(double epsilon) {
  if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
  const double t = std::ceil(32.0 * std::log(12.0) / (25.0 * epsilon * epsilon));
  if (!(t < 4.6e18)) throw ArgumentError("shot count overflows 63 bits");
  return static_cast<std::uint64_t>(t);
}

void validate(const CertificationConfig& config, std::size_t num_qubits) {
  const double n = static_cast<double>(num_qubits);
  const double limit = 1.0 / (64.0 * n * n);
  if (!(config.epsilon > 0.0 && config.epsilon < limit)) {
    std::ostringstream os;
    os << "epsilon must satisfy 0 < eps < 1/(64 N^2) = " << limit << " for N = "
       << num_qubits << ", got " << config.epsilon;
    throw ConfigurationError(os.str());
  }
}

Estimates estimate_from_distributions(
    const CertificationPlan& plan,
    const std::vector<OutcomeDistribution>& distributions) {
  if (distributions.size() != plan.bases.size()) {
    throw DimensionError("one distribution per planned basis is required");
  }
  const std::size_t n = plan.graph.num_vertices();
  for (std::size_t i = 0; i < distributions.size(); ++i) {
    const auto& d = distributions[i];
    if (d.num_qubits != n) throw DimensionError("distribution qubit count mismatch");
    if (!same_direction(d.basis, plan.bases[i].direction)) {
      throw ArgumentError("distribution " + std::to_string(i) +
                          " is not in basis " + plan.bases[i].label);
    }
    if (d.shots != distributions.front().shots) {
      throw ArgumentError("bases were measured with different shot counts");
    }
  }
  Estimates e;
  e.u_hat = distributions[plan.x_basis].product_expectation(
      qubit_mask(n, plan.symmetry_side));
  e.m_hat.reserve(plan.estimators.size());
  for (const VertexEstimator& est : plan.estimators) {
    const std::uint64_t mask = qubit_mask(n, est.support);
    double m = 0.0;
    for (const auto& [basis, weight] : est.terms) {
      m += weight * distributions[basis].product_expectation(mask);
    }
    e.m_hat.push_back(m);
  }
  return e;
}

Estimates exact_estimates(const CertificationPlan& plan,
                          const MixedStateEnsemble& rho) {
  std::vector<OutcomeDistribution> d;
  for (const PlannedBasis& b : plan.bases) {
    const auto p = outcome_probabilities(rho, b.direction);
    d.push_back(exact_distribution(p, b.direction, rho.num_qubits()));
  }
  return estimate_from_distributions(plan, d);
}

EnsembleSource::EnsembleSource(MixedStateEnsemble rho, Mode mode)
    : rho_(std::move(rho)), mode_(mode) {}

std::shared_ptr<const std::vector<double>> EnsembleSource::probabilities(
    const MeasurementDirection& direction) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = cache_.find(direction.vector());
  if (it != cache_.end()) return it->second;
  auto p = std::make_shared<const std::vector<double>>(
      outcome_probabilities(rho_, direction));
  cache_.emplace(direction.vector(), p);
  return p;
}

OutcomeDistribution EnsembleSource::measure(const MeasurementDirection& direction,
                                            std::uint64_t shots,
                                            std::uint64_t seed) const {
  if (mode_ == Mode::PerShot) {
    return tabulate(sample_uniform_measurement(
        rho_, direction, static_cast<std::size_t>(shots), seed));
  }
  const auto p = probabilities(direction);
  return sample_outcome_counts(*p, direction, rho_.num_qubits(), shots, seed);
}

RecordSource::RecordSource(std::vector<MeasurementRecord> records)
    : records_(std::move(records)) {
  if (records_.empty()) throw ArgumentError("no measurement records");
  for (const auto& r : records_) {
    if (r.num_qubits() != records_.front().num_qubits()) {
      throw DimensionError("records differ in qubit count");
    }
    if (r.shots() != records_.front().shots()) {
      throw ArgumentError("records differ in shot count");
    }
  }
}

std::size_t RecordSource::num_qubits() const {
  return records_.front().num_qubits();
}

std::uint64_t RecordSource::shots() const { return records_.front().shots(); }

OutcomeDistribution RecordSource::measure(const MeasurementDirection& direction,
                                          std::uint64_t shots,
                                          std::uint64_t /*seed*/) const {
  for (const auto& r : records_) {
    if (!same_direction(r.basis(), direction)) continue;
    if (r.shots() != shots) {
      throw ArgumentError("record has " + std::to_string(r.shots()) +
                          " shots, protocol asked for " + std::to_string(shots));
    }
    return tabulate(r);
  }
  std::ostringstream os;
  os << "no record in basis (" << direction.nx() << ", " << direction.ny() << ", "
     << direction.nz() << ")";
  throw ArgumentError(os.str());
}

CertificationReport certify(const MeasurementSource& source,
                            const GraphSpec& target,
                            const CertificationConfig& config) {
  return certify(source, make_certification_plan(target), config);
}

CertificationReport certify(const MeasurementSource& source,
                            const CertificationPlan& plan,
                            const CertificationConfig& config) {
  const std::size_t n = plan.graph.num_vertices();
  if (source.num_qubits() != n) throw DimensionError("source qubit count mismatch");
  validate(config, n);

  CertificationReport r;
  r.epsilon = config.epsilon;
  r.default_shots = default_shot_count(config.epsilon);
  r.shots = config.shots == 0 ? r.default_shots : config.shots;
  r.shots_overridden = r.shots < r.default_shots;
  r.seed = config.seed;
  r.bases = plan.bases;
  r.symmetry_side = plan.symmetry_side;
  r.graph = plan.graph;
  r.u_threshold = symmetry_threshold(config.epsilon);
  r.m_threshold = combination_threshold(config.epsilon);

  std::vector<OutcomeDistribution> d;
  d.reserve(plan.bases.size());
  for (std::size_t i = 0; i < plan.bases.size(); ++i) {
    d.push_back(source.measure(plan.bases[i].direction, r.shots,
                               derive_seed(config.seed, i)));
  }
  Estimates e = estimate_from_distributions(plan, d);
  r.u_hat = e.u_hat;
  r.m_hat = std::move(e.m_hat);
  r.verdict = decide(r.u_hat, r.m_hat, config.epsilon);
  return r;
}

double anticommuting_expectation_bound(double u_expectation) {
  return std::sqrt(2.0 * std::max(0.0, 1.0 - u_expectation));
}

double fidelity_lower_bound_from_generators(const std::vector<double>& generator_expectations) {
  double deficit = 0.0;
  for (double e : generator_expectations) deficit += 1.0 - e;
  return 1.0 - deficit / 2.0;
}

double group_element_lower_bound(double fidelity) {
  return 1.0 - 2.0 * std::sqrt(std::max(0.0, 1.0 - fidelity));
}

double fidelity_upper_bound_from_symmetry(double u_expectation) {
  return 1.0 - (1.0 - u_expectation) / 2.0;
}

}  // namespace unicert

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

#include "unicert/rydberg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "unicert/certify.hpp"
#include "unicert/errors.hpp"
#include "unicert/parallel.hpp"

namespace unicert {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxEigenSites = 10;

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

const char* measurement_label(double theta) {
  if (near(theta, kPi / 2)) return "measure_x";
  if (near(theta, kPi / 4)) return "measure_xz_plus";
  if (near(theta, 3 * kPi / 4)) return "measure_xz_minus";
  throw ArgumentError("measurement schedules exist for theta = pi/2, pi/4, 3pi/4");
}

void apply_everywhere(StateVector& state, const Matrix2& u) {
  for (std::size_t q = 0; q < state.num_qubits(); ++q) state.apply_single_qubit(q, u);
}

// 2pi * sum_{i<j} C6 n_i n_j / |i-j|^6 per basis state.
std::vector<double> interaction_energies(const RydbergChainConfig& config) {
  const std::size_t n = config.n;
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> out(dim, 0.0);
  for (std::size_t b = 0; b < dim; ++b) {
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((b >> (n - 1 - i)) & 1U)) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!((b >> (n - 1 - j)) & 1U)) continue;
        if (config.nearest_neighbor_only && j - i > 1) continue;
        e += config.c6 / std::pow(static_cast<double>(j - i), 6);
      }
    }
    out[b] = kTwoPi * e;
  }
  return out;
}

}  // namespace

void validate(const RydbergChainConfig& config) {
  if (config.n > kMaxRydbergSites) {
    throw CapabilityError("Rydberg dynamics limited to " +
                          std::to_string(kMaxRydbergSites) + " sites");
  }
  if (config.n < 3 || config.n % 2 == 0) {
    throw ArgumentError("the chain scheme needs an odd number of sites >= 3");
  }
  if (!(config.h > 0.0)) throw ArgumentError("pulse amplitude h must be positive");
  if (!(config.c6 > 0.0)) throw ArgumentError("C6 must be positive");
}

PulseTimes pulse_times(double h) {
  if (!(h > 0.0)) throw ArgumentError("pulse amplitude h must be positive");
  return {1.0 / (2.0 * std::sqrt(2.0) * h), 0.5, 1.0 / (4.0 * h), 1.0 / (8.0 * h)};
}

PulseSchedule preparation_schedule(const RydbergChainConfig& config) {
  const PulseTimes t = pulse_times(config.h);
  return {"prepare", {{t.dt1, config.h, config.h}, {t.dt2, 0.0, 0.0}}};
}

PulseSchedule measurement_schedule(const RydbergChainConfig& config, double theta) {
  const PulseTimes t = pulse_times(config.h);
  const double h = config.h;
  PulseSchedule s{measurement_label(theta), {}};
  // A detuning quarter turn about z, then a Rabi turn about x through
  // theta; together they carry the target direction onto z.
  s.segments.push_back({t.dt3, 0.0, h});
  double rabi = t.dt3;
  if (near(theta, kPi / 4)) {
    rabi = t.dt4;
  } else if (near(theta, 3 * kPi / 4)) {
    rabi = t.dt3 + t.dt4;
  }
  s.segments.push_back({rabi, h, 0.0});
  return s;
}

Eigen::MatrixXd hamiltonian_matrix(const RydbergChainConfig& config,
                                   double omega, double delta) {
  validate(config);
  const std::size_t n = config.n;
  const std::vector<double> interaction = interaction_energies(config);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const double coupling = kTwoPi * omega / 2.0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    const double pop = std::popcount(static_cast<std::uint64_t>(b));
    h(b, b) = interaction[static_cast<std::size_t>(b)] - kTwoPi * delta * pop;
    for (std::size_t q = 0; q < n; ++q) {
      h(b ^ (Eigen::Index{1} << (n - 1 - q)), b) += coupling;
    }
  }
  return h;
}

ChainPropagator::ChainPropagator(RydbergChainConfig config)
    : config_(std::move(config)) {
  validate(config_);
  interaction_ = interaction_energies(config_);
}

std::vector<double> ChainPropagator::diagonal(double delta) const {
  std::vector<double> d(interaction_.size());
  for (std::size_t b = 0; b < d.size(); ++b) {
    d[b] = interaction_[b] -
           kTwoPi * delta * static_cast<double>(std::popcount(b));
  }
  return d;
}

const ChainPropagator::Spectrum& ChainPropagator::spectrum(double omega,
                                                           double delta) const {
  auto& slot = cache_[{omega, delta}];
  if (!slot) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        hamiltonian_matrix(config_, omega, delta));
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("eigendecomposition of the chain Hamiltonian failed");
    }
    slot = std::make_unique<Spectrum>(Spectrum{solver.eigenvectors(),
                                               solver.eigenvalues()});
  }
  return *slot;
}

void ChainPropagator::apply_segment(StateVector& state,
                                    const PulseSegment& segment) const {
  if (!(segment.duration > 0.0)) throw ArgumentError("segment duration must be positive");
  if (state.num_qubits() != config_.n) throw DimensionError("state size mismatch");
  const double t = segment.duration;
  const std::size_t n = config_.n;
  const std::size_t dim = state.dimension();
  const auto amps = state.amplitudes();

  if (segment.omega == 0.0) {
    const std::vector<double> d = diagonal(segment.delta);
    std::vector<Complex> phases(dim);
    for (std::size_t b = 0; b < dim; ++b) phases[b] = std::polar(1.0, -d[b] * t);
    state.apply_diagonal(phases);
    return;
  }

  std::vector<Complex> out(dim);
  if (n <= kMaxEigenSites) {
    const Spectrum& s = spectrum(segment.omega, segment.delta);
    Eigen::VectorXd re(static_cast<Eigen::Index>(dim));
    Eigen::VectorXd im(static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
      re(static_cast<Eigen::Index>(b)) = amps[b].real();
      im(static_cast<Eigen::Index>(b)) = amps[b].imag();
    }
    Eigen::VectorXd cre = s.vectors.transpose() * re;
    Eigen::VectorXd cim = s.vectors.transpose() * im;
    for (Eigen::Index k = 0; k < cre.size(); ++k) {
      const Complex c = Complex{cre(k), cim(k)} * std::polar(1.0, -s.values(k) * t);
      cre(k) = c.real();
      cim(k) = c.imag();
    }
    const Eigen::VectorXd ore = s.vectors * cre;
    const Eigen::VectorXd oim = s.vectors * cim;
    for (std::size_t b = 0; b < dim; ++b) {
      out[b] = {ore(static_cast<Eigen::Index>(b)), oim(static_cast<Eigen::Index>(b))};
    }
  } else {
    const std::vector<double> d = diagonal(segment.delta);
    const double coupling = kTwoPi * segment.omega / 2.0;
    double bound = 0.0;
    for (double v : d) bound = std::max(bound, std::abs(v));
    bound += static_cast<double>(n) * std::abs(coupling);
    const auto steps = static_cast<std::size_t>(std::ceil(bound * t / 0.5)) + 1;
    const double dt = t / static_cast<double>(steps);
    out.assign(amps.begin(), amps.end());
    std::vector<Complex> term(dim), next(dim);
    for (std::size_t step = 0; step < steps; ++step) {
      term = out;
      for (int k = 1; k < 60; ++k) {
        const Complex factor = Complex{0.0, -dt} / static_cast<double>(k);
        double norm = 0.0;
        for (std::size_t b = 0; b < dim; ++b) {
          Complex hv = d[b] * term[b];
          for (std::size_t q = 0; q < n; ++q) hv += coupling * term[b ^ (std::size_t{1} << q)];
          next[b] = factor * hv;
          norm += std::norm(next[b]);
        }
        term.swap(next);
        for (std::size_t b = 0; b < dim; ++b) out[b] += term[b];
        if (norm < 1e-32) break;
      }
    }
  }
  state = StateVector(n, std::move(out));
}

StateVector ChainPropagator::evolve(StateVector state,
                                    const PulseSchedule& schedule) const {
  for (const PulseSegment& s : schedule.segments) apply_segment(state, s);
  return state;
}

StateVector evolve(StateVector state, const PulseSchedule& schedule,
                   const RydbergChainConfig& config) {
  return ChainPropagator(config).evolve(std::move(state), schedule);
}

namespace {

StateVector prepare_with(const ChainPropagator& propagator,
                         const RydbergChainConfig& config) {
  StateVector state(config.n);
  const PulseSchedule prep = preparation_schedule(config);
  if (config.instantaneous_rotations) {
    const double r = 1.0 / std::sqrt(2.0);
    apply_everywhere(state, rotation_matrix({r, 0.0, r}, kPi));
    propagator.apply_segment(state, prep.segments.back());
    return state;
  }
  return propagator.evolve(std::move(state), prep);
}

}  // namespace

StateVector prepare_graph_state_via_pulses(const RydbergChainConfig& config) {
  const ChainPropagator propagator(config);
  return prepare_with(propagator, config);
}

std::vector<double> RydbergObservables::values() const {
  std::vector<double> v = m;
  v.push_back(u_x);
  return v;
}

RydbergObservables measure_observables(const RydbergChainConfig& config,
                                       RydbergMode mode) {
  validate(config);
  const GraphSpec path = GraphSpec::path(config.n);
  const CertificationPlan plan = make_certification_plan(path);
  const StateVector ideal = prepare_graph_state(path);

  RydbergObservables out;
  out.schedules.push_back(preparation_schedule(config));
  for (const PlannedBasis& b : plan.bases) {
    out.schedules.push_back(measurement_schedule(config, b.theta));
  }

  const bool ideal_mode = mode == RydbergMode::Ideal;
  const ChainPropagator propagator(config);
  const StateVector prepared = ideal_mode ? ideal : prepare_with(propagator, config);
  out.fidelity = std::norm(ideal.inner(prepared));

  std::vector<OutcomeDistribution> dists;
  for (std::size_t i = 0; i < plan.bases.size(); ++i) {
    const PlannedBasis& b = plan.bases[i];
    StateVector rotated = prepared;
    if (ideal_mode || config.instantaneous_rotations) {
      apply_everywhere(rotated, basis_change_to_z(b.direction));
    } else {
      rotated = propagator.evolve(std::move(rotated), out.schedules[i + 1]);
    }
    const std::vector<double> p = rotated.probabilities();
    dists.push_back(exact_distribution(p, b.direction, config.n));
  }
  Estimates e = estimate_from_distributions(plan, dists);
  out.m = std::move(e.m_hat);
  out.u_x = e.u_hat;
  return out;
}

std::vector<RydbergObservables> h_sweep(const RydbergChainConfig& config,
                                        const std::vector<double>& hs,
                                        RydbergMode mode) {
  std::vector<RydbergObservables> out(hs.size());
  parallel_for(hs.size(), worker_threads(), [&](std::size_t i) {
    RydbergChainConfig c = config;
    c.h = hs[i];
    out[i] = measure_observables(c, mode);
  });
  return out;
}

}  // namespace unicert

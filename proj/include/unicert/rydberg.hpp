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

// Rydberg chain dynamics.
//
// Encoding: |g> = |0>, |r> = |1>, n = |r><r| = (1 - Z)/2. In units of C6,
//   H / 2pi = (Omega/2) sum_i X_i - Delta sum_i n_i
//             + sum_{i<j} C6 n_i n_j / |i - j|^6,
// and a segment of duration t evolves by exp(-i 2pi (H/2pi) t).
//
// Preparation: Omega = Delta = h for dt1 = 1/(2 sqrt2 h) is a pi rotation
// about (x + z)/sqrt2, taking |g> to |+>; a hold with Omega = Delta = 0 for
// dt2 = 1/2 gives the nearest-neighbour pair |rr> the phase exp(-i pi) = -1,
// which is exactly CZ. No local-phase correction is needed in this encoding.
//
// Measurement along (sin theta, 0, cos theta) applies V = R_y(-theta) as
//   [Omega = +h, dt3]  R_x(pi/2)
//   [Delta = -h, ...]  R_z(-theta): dt3 for pi/2, dt4 for pi/4, dt3 + dt4
//                      for 3pi/4
//   [Omega = -h, dt3]  R_x(-pi/2)
// with dt3 = 1/(4h) and dt4 = 1/(8h). The interaction stays on throughout.

#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "unicert/statevector.hpp"

namespace unicert {

inline constexpr std::size_t kMaxRydbergSites = 14;

struct RydbergChainConfig {
  std::size_t n = 9;   // odd, 3..14
  double c6 = 1.0;
  double h = 20.0;     // pulse amplitude, > 0
  bool nearest_neighbor_only = false;    // drop couplings beyond |i-j| = 1
  bool instantaneous_rotations = false;  // ideal single-qubit rotations
};

/// Throws ArgumentError (even n, h <= 0, c6 <= 0) or CapabilityError (n > 14).
void validate(const RydbergChainConfig& config);

struct PulseSegment {
  double duration = 0.0;  // > 0
  double omega = 0.0;
  double delta = 0.0;
};

struct PulseSchedule {
  std::string label;  // prepare, measure_x, measure_xz_plus, measure_xz_minus
  std::vector<PulseSegment> segments;
};

struct PulseTimes {
  double dt1, dt2, dt3, dt4;
};
PulseTimes pulse_times(double h);

PulseSchedule preparation_schedule(const RydbergChainConfig& config);

/// theta must be pi/2 (measure_x), pi/4 (measure_xz_plus) or 3pi/4
/// (measure_xz_minus) within 1e-12.
PulseSchedule measurement_schedule(const RydbergChainConfig& config, double theta);

/// Dense 2pi * (H/2pi), real symmetric. Throws CapabilityError for n > 14.
Eigen::MatrixXd hamiltonian_matrix(const RydbergChainConfig& config,
                                   double omega, double delta);

/// Piecewise-constant evolution. Segments with Omega = 0 are diagonal and
/// applied exactly; others use a cached eigendecomposition for n <= 10 and a
/// matrix-free Taylor series (truncation below 1e-15 per step) above.
class ChainPropagator {
 public:
  explicit ChainPropagator(RydbergChainConfig config);

  StateVector evolve(StateVector state, const PulseSchedule& schedule) const;
  void apply_segment(StateVector& state, const PulseSegment& segment) const;

 private:
  struct Spectrum {
    Eigen::MatrixXd vectors;
    Eigen::VectorXd values;
  };
  const Spectrum& spectrum(double omega, double delta) const;
  std::vector<double> diagonal(double delta) const;  // includes 2pi

  RydbergChainConfig config_;
  std::vector<double> interaction_;  // 2pi * interaction energy per basis state
  mutable std::map<std::pair<double, double>, std::unique_ptr<Spectrum>> cache_;
};

StateVector evolve(StateVector state, const PulseSchedule& schedule,
                   const RydbergChainConfig& config);

/// |g>^N through the preparation schedule (or, with instantaneous rotations,
/// the ideal rotation followed by the hold).
StateVector prepare_graph_state_via_pulses(const RydbergChainConfig& config);

enum class RydbergMode { Pulses, Ideal };

struct RydbergObservables {
  std::vector<double> m;  // M_1..M_N
  double u_x = 0.0;       // <U_X>, reported as M_{N+1}
  double fidelity = 0.0;  // prepared state vs ideal path graph state
  std::vector<PulseSchedule> schedules;

  /// M_1..M_N followed by <U_X>.
  std::vector<double> values() const;
};

/// Pulses: pulse-prepared state, measured with the measurement schedules (or
/// ideal rotations when toggled). Ideal: exact graph state, ideal rotations.
/// The values are exact post-rotation Z-string expectations combined with
/// the path estimators.
RydbergObservables measure_observables(const RydbergChainConfig& config,
                                       RydbergMode mode = RydbergMode::Pulses);

/// measure_observables at each h (in order), evaluated in parallel.
std::vector<RydbergObservables> h_sweep(const RydbergChainConfig& config,
                                        const std::vector<double>& hs,
                                        RydbergMode mode = RydbergMode::Pulses);

}  // namespace unicert

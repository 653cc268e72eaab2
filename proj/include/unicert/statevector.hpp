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

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "unicert/pauli.hpp"
#include "unicert/random.hpp"
#include "unicert/stabilizer.hpp"

namespace unicert {

using Complex = std::complex<double>;

/// Row-major 2x2 complex matrix {u00, u01, u10, u11}.
using Matrix2 = std::array<Complex, 4>;

inline constexpr std::size_t kMaxStateQubits = 24;

/// Dense pure state on N <= 24 qubits. Qubit 0 is the most significant bit of
/// the amplitude index; bit value 1 is |1>.
class StateVector {
 public:
  /// |0...0>.
  explicit StateVector(std::size_t num_qubits);

  /// Throws DimensionError on a length other than 2^N and ArgumentError if the
  /// norm differs from 1 by more than 1e-10.
  StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes);

  static StateVector basis_state(std::size_t num_qubits, std::uint64_t index);

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  Complex amplitude(std::uint64_t index) const { return amps_.at(index); }

  void apply_single_qubit(std::size_t qubit, const Matrix2& u);
  void apply_cz(std::size_t a, std::size_t b);
  void apply_pauli(const PauliString& p);

  /// Multiplies amplitude i by phases[i].
  void apply_diagonal(std::span<const Complex> phases);

  double norm_squared() const;

  /// <this|other>.
  Complex inner(const StateVector& other) const;

  /// <psi|P|psi>.
  double expectation(const PauliString& p) const;

  /// |amplitude|^2 per basis index.
  std::vector<double> probabilities() const;

 private:
  std::size_t n_;
  std::vector<Complex> amps_;
};

std::size_t qubit_shift(std::size_t num_qubits, std::size_t qubit);

/// exp(-i angle (axis . sigma) / 2). Throws ArgumentError if |axis| is off
/// by more than 1e-9.
Matrix2 rotation_matrix(const std::array<double, 3>& axis, double angle);

/// Single-qubit V with V^dagger Z V = direction . sigma: a Z readout after V
/// measures along `direction`, outcome 0 meaning +1.
Matrix2 basis_change_to_z(const MeasurementDirection& direction);

/// |+>^N followed by CZ on every edge. Throws CapabilityError over the cap.
StateVector prepare_graph_state(const GraphSpec& graph);

/// The same rotation on every qubit.
StateVector apply_uniform_rotation(StateVector state,
                                   const std::array<double, 3>& axis,
                                   double angle);

/// Dense joint +1 eigenvector of the tableau, built by projecting a fixed
/// generic state with prod (1 + g_i)/2. Global phase fixed so the
/// largest-magnitude amplitude is real positive.
StateVector stabilizer_state_vector(const StabilizerTableau& tableau);

/// Haar-random pure state (normalized complex Gaussian amplitudes).
StateVector random_state(std::size_t num_qubits, Rng& rng);

/// Component of `state` orthogonal to `against`, normalized. Throws
/// ArgumentError when nothing is left.
StateVector orthogonalize(const StateVector& state, const StateVector& against);

/// Mixed state as a convex combination of pure states.
class MixedStateEnsemble {
 public:
  struct Member {
    double weight;
    StateVector state;
  };

  /// Weights must be >= 0 and sum to 1 within 1e-10; states share N.
  explicit MixedStateEnsemble(std::vector<Member> members);
  static MixedStateEnsemble pure(StateVector state);

  /// I / 2^N as the uniform mixture of computational basis states (N <= 12).
  static MixedStateEnsemble maximally_mixed(std::size_t num_qubits);

  std::size_t num_qubits() const noexcept { return n_; }
  const std::vector<Member>& members() const noexcept { return members_; }

 private:
  std::size_t n_ = 0;
  std::vector<Member> members_;
};

double expectation(const MixedStateEnsemble& rho, const PauliString& p);
double expectation(const MixedStateEnsemble& rho, const PauliSum& sum);

/// sum_k w_k |<target|psi_k>|^2.
double fidelity(const MixedStateEnsemble& rho, const StateVector& target);

/// rho -> (1-p) rho + p I/2^N.
struct Depolarizing {
  double p;
};
/// exp(-i angle Z_q / 2) on every member.
struct SingleQubitZRotation {
  std::size_t qubit;
  double angle;
};
/// Pure psi -> (1-p) |psi><psi| + p |phi><phi| with a seeded random phi
/// orthogonal to psi, so the fidelity with psi is exactly 1-p.
struct ReplaceWithOrthogonal {
  double p;
};
using NoiseModel = std::variant<Depolarizing, SingleQubitZRotation, ReplaceWithOrthogonal>;

MixedStateEnsemble apply_noise(const MixedStateEnsemble& rho,
                               const NoiseModel& model, std::uint64_t seed);

/// (1-p) psi + p phi for an explicit phi; phi is orthogonalized against psi.
MixedStateEnsemble orthogonal_mixture(const StateVector& psi, double p,
                                      const StateVector& phi);

/// Per-shot +-1 outcomes of a uniform measurement.
class MeasurementRecord {
 public:
  MeasurementRecord(MeasurementDirection basis, std::size_t num_qubits,
                    std::size_t shots, std::vector<std::int8_t> outcomes);

  const MeasurementDirection& basis() const noexcept { return basis_; }
  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t shots() const noexcept { return shots_; }
  int at(std::size_t shot, std::size_t qubit) const {
    return outcomes_.at(shot * n_ + qubit);
  }
  std::span<const std::int8_t> row(std::size_t shot) const {
    return std::span<const std::int8_t>(outcomes_).subspan(shot * n_, n_);
  }
  const std::vector<std::int8_t>& outcomes() const noexcept { return outcomes_; }

  friend bool operator==(const MeasurementRecord&,
                         const MeasurementRecord&) = default;

 private:
  MeasurementDirection basis_;
  std::size_t n_;
  std::size_t shots_;
  std::vector<std::int8_t> outcomes_;
};

/// Sparse distribution over outcome bitstrings of one uniform basis. Bit
/// (N-1-q) of `bits` is set when qubit q read -1. `weight` is a relative
/// frequency (count / shots) or, with shots == 0, an exact Born probability.
struct OutcomeDistribution {
  struct Entry {
    std::uint64_t bits;
    double weight;
  };
  MeasurementDirection basis{0.0, 0.0, 1.0};
  std::size_t num_qubits = 0;
  std::uint64_t shots = 0;
  std::vector<Entry> entries;  // increasing `bits`

  /// sum_b weight(b) prod_{q in mask} (+-1)_q.
  double product_expectation(std::uint64_t qubit_mask) const;
};

/// Exact Born distribution of a uniform measurement (dense 2^N vector).
std::vector<double> outcome_probabilities(const MixedStateEnsemble& rho,
                                          const MeasurementDirection& direction);

/// Per-shot sampling: each shot picks a member by weight, rotates
/// `direction` onto z and draws a full bitstring by CDF inversion.
MeasurementRecord sample_uniform_measurement(const MixedStateEnsemble& rho,
                                             const MeasurementDirection& direction,
                                             std::size_t shots,
                                             std::uint64_t seed);

/// Multinomial histogram of `shots` draws from `probabilities`; equal in law
/// to tabulating sample_uniform_measurement.
OutcomeDistribution sample_outcome_counts(std::span<const double> probabilities,
                                          const MeasurementDirection& direction,
                                          std::size_t num_qubits,
                                          std::uint64_t shots,
                                          std::uint64_t seed);

OutcomeDistribution exact_distribution(std::span<const double> probabilities,
                                       const MeasurementDirection& direction,
                                       std::size_t num_qubits);

OutcomeDistribution tabulate(const MeasurementRecord& record);

/// Mask with qubit q at bit (N-1-q).
std::uint64_t qubit_mask(std::size_t num_qubits,
                         std::span<const std::size_t> qubits);

}  // namespace unicert

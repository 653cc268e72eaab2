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

#include "unicert/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "unicert/errors.hpp"

namespace unicert {
namespace {

constexpr double kNormTolerance = 1e-10;

void check_cap(std::size_t n) {
  if (n == 0) throw ArgumentError("state needs at least one qubit");
  if (n > kMaxStateQubits) {
    throw CapabilityError("dense state limited to " +
                          std::to_string(kMaxStateQubits) + " qubits, got " +
                          std::to_string(n));
  }
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("noise probability must lie in [0, 1]");
  }
}

// i^k for k mod 4.
Complex i_power(unsigned k) {
  switch (k & 3U) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

// out[b ^ x] = P|b> coefficient times amps[b].
std::vector<Complex> pauli_applied(const std::vector<Complex>& amps,
                                   const PauliString& p) {
  const std::uint64_t xm = p.x_mask();
  const std::uint64_t zm = p.z_mask();
  const Complex global =
      i_power(static_cast<unsigned>(std::popcount(xm & zm))) *
      static_cast<double>(p.sign());
  std::vector<Complex> out(amps.size());
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    const double s = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
    out[b ^ xm] = global * s * amps[b];
  }
  return out;
}

std::vector<double> rotated_probabilities(const StateVector& state,
                                          const Matrix2& v) {
  StateVector rotated = state;
  for (std::size_t q = 0; q < state.num_qubits(); ++q) {
    rotated.apply_single_qubit(q, v);
  }
  return rotated.probabilities();
}

}  // namespace

std::size_t qubit_shift(std::size_t num_qubits, std::size_t qubit) {
  if (qubit >= num_qubits) throw ArgumentError("qubit index out of range");
  return num_qubits - 1 - qubit;
}

StateVector::StateVector(std::size_t num_qubits) : n_(num_qubits) {
  check_cap(num_qubits);
  amps_.assign(std::size_t{1} << num_qubits, Complex{});
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t num_qubits, std::vector<Complex> amplitudes)
    : n_(num_qubits), amps_(std::move(amplitudes)) {
  check_cap(num_qubits);
  if (amps_.size() != (std::size_t{1} << num_qubits)) {
    throw DimensionError("amplitude vector length is not 2^N");
  }
  if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
    throw ArgumentError("state is not normalized");
  }
}

StateVector StateVector::basis_state(std::size_t num_qubits,
                                     std::uint64_t index) {
  StateVector s(num_qubits);
  if (index >= s.dimension()) throw ArgumentError("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

void StateVector::apply_single_qubit(std::size_t qubit, const Matrix2& u) {
  const std::size_t stride = std::size_t{1} << qubit_shift(n_, qubit);
  const std::size_t dim = amps_.size();
  for (std::size_t block = 0; block < dim; block += 2 * stride) {
    for (std::size_t i = block; i < block + stride; ++i) {
      const Complex a0 = amps_[i];
      const Complex a1 = amps_[i + stride];
      amps_[i] = u[0] * a0 + u[1] * a1;
      amps_[i + stride] = u[2] * a0 + u[3] * a1;
    }
  }
}

void StateVector::apply_cz(std::size_t a, std::size_t b) {
  if (a == b) throw ArgumentError("CZ needs two distinct qubits");
  const std::uint64_t mask = (std::uint64_t{1} << qubit_shift(n_, a)) |
                             (std::uint64_t{1} << qubit_shift(n_, b));
  for (std::uint64_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

void StateVector::apply_pauli(const PauliString& p) {
  if (p.num_qubits() != n_) throw DimensionError("Pauli size mismatch");
  amps_ = pauli_applied(amps_, p);
}

void StateVector::apply_diagonal(std::span<const Complex> phases) {
  if (phases.size() != amps_.size()) throw DimensionError("diagonal size mismatch");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] *= phases[i];
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const Complex& a : amps_) s += std::norm(a);
  return s;
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.n_ != n_) throw DimensionError("state size mismatch");
  Complex s{};
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    s += std::conj(amps_[i]) * other.amps_[i];
  }
  return s;
}

double StateVector::expectation(const PauliString& p) const {
  if (p.num_qubits() != n_) throw DimensionError("Pauli size mismatch");
  const std::uint64_t xm = p.x_mask();
  const std::uint64_t zm = p.z_mask();
  const Complex global =
      i_power(static_cast<unsigned>(std::popcount(xm & zm))) *
      static_cast<double>(p.sign());
  Complex s{};
  for (std::uint64_t b = 0; b < amps_.size(); ++b) {
    const double sign = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
    s += std::conj(amps_[b ^ xm]) * amps_[b] * sign;
  }
  return (global * s).real();
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
  return p;
}

Matrix2 rotation_matrix(const std::array<double, 3>& axis, double angle) {
  const double norm =
      std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw ArgumentError("rotation axis is not a unit vector");
  }
  const double nx = axis[0] / norm, ny = axis[1] / norm, nz = axis[2] / norm;
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const Complex mi{0.0, -s};
  return {Complex{c, 0.0} + mi * nz, mi * Complex{nx, -ny},
          mi * Complex{nx, ny}, Complex{c, 0.0} - mi * nz};
}

Matrix2 basis_change_to_z(const MeasurementDirection& direction) {
  // Rows are <n+| and <n-|.
  const double theta = std::acos(std::clamp(direction.nz(), -1.0, 1.0));
  const double phi = std::atan2(direction.ny(), direction.nx());
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  return {Complex{c, 0.0}, std::conj(e) * s, -e * s, Complex{c, 0.0}};
}

StateVector prepare_graph_state(const GraphSpec& graph) {
  const std::size_t n = graph.num_vertices();
  check_cap(n);
  std::vector<std::uint64_t> edge_masks;
  for (const auto& [a, b] : graph.edges()) {
    edge_masks.push_back((std::uint64_t{1} << qubit_shift(n, a)) |
                         (std::uint64_t{1} << qubit_shift(n, b)));
  }
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
  std::vector<Complex> amps(std::size_t{1} << n);
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    int parity = 0;
    for (std::uint64_t m : edge_masks) parity ^= ((b & m) == m);
    amps[b] = parity ? -amp : amp;
  }
  return StateVector(n, std::move(amps));
}

StateVector apply_uniform_rotation(StateVector state,
                                   const std::array<double, 3>& axis,
                                   double angle) {
  const Matrix2 u = rotation_matrix(axis, angle);
  for (std::size_t q = 0; q < state.num_qubits(); ++q) {
    state.apply_single_qubit(q, u);
  }
  return state;
}

StateVector random_state(std::size_t num_qubits, Rng& rng) {
  check_cap(num_qubits);
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  double norm = 0.0;
  for (Complex& a : amps) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    a = {re, im};
    norm += re * re + im * im;
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (Complex& a : amps) a *= scale;
  return StateVector(num_qubits, std::move(amps));
}

StateVector orthogonalize(const StateVector& state, const StateVector& against) {
  const Complex overlap = against.inner(state);
  std::vector<Complex> amps(state.amplitudes().begin(), state.amplitudes().end());
  const auto ref = against.amplitudes();
  double norm = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] -= overlap * ref[i];
    norm += std::norm(amps[i]);
  }
  if (norm < 1e-20) throw ArgumentError("state is parallel to the reference");
  const double scale = 1.0 / std::sqrt(norm);
  for (Complex& a : amps) a *= scale;
  return StateVector(state.num_qubits(), std::move(amps));
}

StateVector stabilizer_state_vector(const StabilizerTableau& tableau) {
  const std::size_t n = tableau.num_qubits();
  check_cap(n);
  // A generic seed state has nonzero overlap with every stabilizer state.
  Rng rng = make_rng(0x5eed5eedULL ^ n);
  StateVector seed_state = random_state(n, rng);
  std::vector<Complex> amps(seed_state.amplitudes().begin(),
                            seed_state.amplitudes().end());
  for (const PauliString& g : tableau.generators()) {
    const std::vector<Complex> flipped = pauli_applied(amps, g);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      amps[i] = 0.5 * (amps[i] + flipped[i]);
    }
  }
  double norm = 0.0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    norm += std::norm(amps[i]);
    if (std::norm(amps[i]) > std::norm(amps[best]) + 1e-12) best = i;
  }
  if (norm < 1e-20) throw ArgumentError("projection onto stabilizer state vanished");
  const Complex phase = std::conj(amps[best]) / std::abs(amps[best]);
  const double scale = 1.0 / std::sqrt(norm);
  for (Complex& a : amps) a *= phase * scale;
  return StateVector(n, std::move(amps));
}

MixedStateEnsemble::MixedStateEnsemble(std::vector<Member> members)
    : members_(std::move(members)) {
  if (members_.empty()) throw ArgumentError("ensemble has no members");
  n_ = members_.front().state.num_qubits();
  double total = 0.0;
  for (const Member& m : members_) {
    if (!(m.weight >= 0.0)) throw ArgumentError("negative ensemble weight");
    if (m.state.num_qubits() != n_) {
      throw DimensionError("ensemble members differ in qubit count");
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw ArgumentError("ensemble weights do not sum to 1");
  }
}

MixedStateEnsemble MixedStateEnsemble::pure(StateVector state) {
  std::vector<Member> m;
  m.push_back({1.0, std::move(state)});
  return MixedStateEnsemble(std::move(m));
}

MixedStateEnsemble MixedStateEnsemble::maximally_mixed(std::size_t num_qubits) {
  if (num_qubits > 12) {
    throw CapabilityError("maximally mixed ensemble limited to 12 qubits");
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<Member> m;
  m.reserve(dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    m.push_back({1.0 / static_cast<double>(dim),
                 StateVector::basis_state(num_qubits, b)});
  }
  return MixedStateEnsemble(std::move(m));
}

double expectation(const MixedStateEnsemble& rho, const PauliString& p) {
  if (p.num_qubits() != rho.num_qubits()) throw DimensionError("Pauli size mismatch");
  double s = 0.0;
  for (const auto& m : rho.members()) {
    if (m.weight > 0.0) s += m.weight * m.state.expectation(p);
  }
  return s;
}

double expectation(const MixedStateEnsemble& rho, const PauliSum& sum) {
  double s = 0.0;
  for (const PauliTerm& t : sum) s += t.coefficient * expectation(rho, t.pauli);
  return s;
}

double fidelity(const MixedStateEnsemble& rho, const StateVector& target) {
  if (target.num_qubits() != rho.num_qubits()) {
    throw DimensionError("target size mismatch");
  }
  double f = 0.0;
  for (const auto& m : rho.members()) {
    if (m.weight > 0.0) f += m.weight * std::norm(target.inner(m.state));
  }
  return f;
}

MixedStateEnsemble orthogonal_mixture(const StateVector& psi, double p,
                                      const StateVector& phi) {
  check_probability(p);
  std::vector<MixedStateEnsemble::Member> m;
  m.push_back({1.0 - p, psi});
  m.push_back({p, orthogonalize(phi, psi)});
  return MixedStateEnsemble(std::move(m));
}

MixedStateEnsemble apply_noise(const MixedStateEnsemble& rho,
                               const NoiseModel& model, std::uint64_t seed) {
  const std::size_t n = rho.num_qubits();
  if (const auto* d = std::get_if<Depolarizing>(&model)) {
    check_probability(d->p);
    const MixedStateEnsemble mixed = MixedStateEnsemble::maximally_mixed(n);
    std::vector<MixedStateEnsemble::Member> out;
    for (const auto& m : rho.members()) out.push_back({(1.0 - d->p) * m.weight, m.state});
    for (const auto& m : mixed.members()) out.push_back({d->p * m.weight, m.state});
    return MixedStateEnsemble(std::move(out));
  }
  if (const auto* z = std::get_if<SingleQubitZRotation>(&model)) {
    const Matrix2 u = rotation_matrix({0.0, 0.0, 1.0}, z->angle);
    std::vector<MixedStateEnsemble::Member> out;
    for (const auto& m : rho.members()) {
      StateVector s = m.state;
      s.apply_single_qubit(z->qubit, u);
      out.push_back({m.weight, std::move(s)});
    }
    return MixedStateEnsemble(std::move(out));
  }
  const auto& r = std::get<ReplaceWithOrthogonal>(model);
  check_probability(r.p);
  if (rho.members().size() != 1) {
    throw ArgumentError("orthogonal replacement needs a pure input state");
  }
  Rng rng = make_rng(seed);
  const StateVector& psi = rho.members().front().state;
  return orthogonal_mixture(psi, r.p, random_state(n, rng));
}

MeasurementRecord::MeasurementRecord(MeasurementDirection basis,
                                     std::size_t num_qubits, std::size_t shots,
                                     std::vector<std::int8_t> outcomes)
    : basis_(basis), n_(num_qubits), shots_(shots), outcomes_(std::move(outcomes)) {
  if (num_qubits == 0 || num_qubits > 64) {
    throw ArgumentError("record qubit count must be in 1..64");
  }
  if (outcomes_.size() != shots * num_qubits) {
    throw DimensionError("record payload is not shots x qubits");
  }
  for (std::int8_t v : outcomes_) {
    if (v != 1 && v != -1) throw ArgumentError("record entries must be +-1");
  }
}

double OutcomeDistribution::product_expectation(std::uint64_t qubit_mask) const {
  double s = 0.0;
  for (const Entry& e : entries) {
    s += (std::popcount(e.bits & qubit_mask) & 1) ? -e.weight : e.weight;
  }
  return s;
}

std::vector<double> outcome_probabilities(const MixedStateEnsemble& rho,
                                          const MeasurementDirection& direction) {
  const Matrix2 v = basis_change_to_z(direction);
  std::vector<double> total(std::size_t{1} << rho.num_qubits(), 0.0);
  for (const auto& m : rho.members()) {
    if (m.weight <= 0.0) continue;
    const std::vector<double> p = rotated_probabilities(m.state, v);
    for (std::size_t i = 0; i < p.size(); ++i) total[i] += m.weight * p[i];
  }
  return total;
}

MeasurementRecord sample_uniform_measurement(const MixedStateEnsemble& rho,
                                             const MeasurementDirection& direction,
                                             std::size_t shots,
                                             std::uint64_t seed) {
  if (shots == 0) throw ArgumentError("shot count must be positive");
  const std::size_t n = rho.num_qubits();
  const Matrix2 v = basis_change_to_z(direction);
  std::vector<double> member_cdf;
  std::vector<std::vector<double>> cdfs;
  double acc = 0.0;
  for (const auto& m : rho.members()) {
    acc += m.weight;
    member_cdf.push_back(acc);
    std::vector<double> p = rotated_probabilities(m.state, v);
    std::partial_sum(p.begin(), p.end(), p.begin());
    cdfs.push_back(std::move(p));
  }
  Rng rng = make_rng(seed);
  std::vector<std::int8_t> outcomes(shots * n);
  for (std::size_t t = 0; t < shots; ++t) {
    std::size_t k = 0;
    if (cdfs.size() > 1) {
      const double u = uniform01(rng) * member_cdf.back();
      k = static_cast<std::size_t>(
          std::upper_bound(member_cdf.begin(), member_cdf.end(), u) -
          member_cdf.begin());
      k = std::min(k, cdfs.size() - 1);
    }
    const auto& cdf = cdfs[k];
    const double u = uniform01(rng) * cdf.back();
    std::uint64_t b = static_cast<std::uint64_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    b = std::min<std::uint64_t>(b, cdf.size() - 1);
    for (std::size_t q = 0; q < n; ++q) {
      outcomes[t * n + q] = ((b >> (n - 1 - q)) & 1U) ? -1 : 1;
    }
  }
  return MeasurementRecord(direction, n, shots, std::move(outcomes));
}

OutcomeDistribution sample_outcome_counts(std::span<const double> probabilities,
                                          const MeasurementDirection& direction,
                                          std::size_t num_qubits,
                                          std::uint64_t shots,
                                          std::uint64_t seed) {
  if (shots == 0) throw ArgumentError("shot count must be positive");
  if (probabilities.size() != (std::size_t{1} << num_qubits)) {
    throw DimensionError("probability vector length is not 2^N");
  }
  Rng rng = make_rng(seed);
  OutcomeDistribution d{direction, num_qubits, shots, {}};
  for (const auto& [index, count] : multinomial(rng, shots, probabilities)) {
    d.entries.push_back(
        {index, static_cast<double>(count) / static_cast<double>(shots)});
  }
  return d;
}

OutcomeDistribution exact_distribution(std::span<const double> probabilities,
                                       const MeasurementDirection& direction,
                                       std::size_t num_qubits) {
  if (probabilities.size() != (std::size_t{1} << num_qubits)) {
    throw DimensionError("probability vector length is not 2^N");
  }
  OutcomeDistribution d{direction, num_qubits, 0, {}};
  for (std::uint64_t b = 0; b < probabilities.size(); ++b) {
    if (probabilities[b] != 0.0) d.entries.push_back({b, probabilities[b]});
  }
  return d;
}

OutcomeDistribution tabulate(const MeasurementRecord& record) {
  const std::size_t n = record.num_qubits();
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::size_t t = 0; t < record.shots(); ++t) {
    std::uint64_t b = 0;
    for (std::int8_t v : record.row(t)) b = (b << 1) | (v < 0 ? 1U : 0U);
    ++counts[b];
  }
  OutcomeDistribution d{record.basis(), n, record.shots(), {}};
  for (const auto& [bits, count] : counts) {
    d.entries.push_back({bits, static_cast<double>(count) /
                                   static_cast<double>(record.shots())});
  }
  return d;
}

std::uint64_t qubit_mask(std::size_t num_qubits,
                         std::span<const std::size_t> qubits) {
  if (num_qubits > 64) throw CapabilityError("masks limited to 64 qubits");
  std::uint64_t m = 0;
  for (std::size_t q : qubits) m |= std::uint64_t{1} << qubit_shift(num_qubits, q);
  return m;
}

}  // namespace unicert

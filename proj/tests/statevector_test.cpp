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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dense_oracle.hpp"
#include "unicert/errors.hpp"
#include "unicert/random.hpp"
#include "unicert/stabilizer.hpp"

namespace unicert {
namespace {

using oracle::Mat;
using oracle::Vec;
constexpr double kPi = std::numbers::pi;

Mat dense_rotation(const std::array<double, 3>& axis, double angle) {
  const Mat n = oracle::direction_matrix(axis[0], axis[1], axis[2]);
  return std::cos(angle / 2) * Mat::Identity(2, 2) -
         oracle::cd(0, 1) * std::sin(angle / 2) * n;
}

double record_mean(const MeasurementRecord& r, const std::vector<std::size_t>& qubits) {
  double sum = 0.0;
  for (std::size_t t = 0; t < r.shots(); ++t) {
    int prod = 1;
    for (std::size_t q : qubits) prod *= r.at(t, q);
    sum += prod;
  }
  return sum / static_cast<double>(r.shots());
}

TEST(StateVector, ConstructionChecks) {
  EXPECT_EQ(StateVector(3).amplitude(0), Complex(1.0));
  EXPECT_THROW(StateVector(2, std::vector<Complex>(3, 0.5)), DimensionError);
  EXPECT_THROW(StateVector(1, {Complex(1.0), Complex(1.0)}), ArgumentError);
  EXPECT_THROW(StateVector(0), ArgumentError);
  EXPECT_THROW(StateVector(kMaxStateQubits + 1), CapabilityError);
  EXPECT_EQ(StateVector::basis_state(2, 3).amplitude(3), Complex(1.0));
}

TEST(PrepareGraphState, Examples) {
  const auto one = prepare_graph_state(GraphSpec::empty(1));
  EXPECT_NEAR(one.amplitude(0).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(one.amplitude(1).real(), 1 / std::sqrt(2.0), 1e-15);
  const auto edge = prepare_graph_state(GraphSpec::path(2));
  const double want[] = {0.5, 0.5, 0.5, -0.5};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(edge.amplitude(i).real(), want[i], 1e-15);
  const auto p3 = prepare_graph_state(GraphSpec::path(3));
  for (const char* s : {"XZI", "ZXZ", "IZX"}) {
    EXPECT_NEAR(p3.expectation(PauliString::parse(s)), 1.0, 1e-12);
  }
}

TEST(PrepareGraphState, MatchesCzCircuitAndStabilizerEigenvector) {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution coin(0.4);
  for (std::size_t n = 2; n <= 10; ++n) {
    std::vector<GraphSpec::Edge> edges;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (coin(rng)) edges.emplace_back(a, b);
      }
    }
    const GraphSpec g(n, edges);
    const Vec mine = oracle::to_vec(prepare_graph_state(g));
    if (n <= 8) EXPECT_NEAR(std::abs(mine.dot(oracle::graph_state(g))), 1.0, 1e-10);
    // The generic stabilizer route agrees up to a global phase.
    const StateVector via = stabilizer_state_vector(graph_state_tableau(g));
    EXPECT_NEAR(std::abs(prepare_graph_state(g).inner(via)), 1.0, 1e-10);
  }
}

TEST(GateKernels, MatchDenseMatrices) {
  std::mt19937_64 rng(5);
  const std::size_t n = 4;
  const Vec v0 = oracle::random_pure(n, rng);
  StateVector s = oracle::to_state(n, v0);
  Vec v = v0;
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int step = 0; step < 30; ++step) {
    const std::size_t q = rng() % n;
    std::array<double, 3> axis{u(rng), u(rng), u(rng)};
    const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    for (double& c : axis) c /= norm;
    const double angle = 3 * u(rng);
    s.apply_single_qubit(q, rotation_matrix(axis, angle));
    v = oracle::product_on(n, {q}, dense_rotation(axis, angle)) * v;
    const std::size_t r = (q + 1 + rng() % (n - 1)) % n;
    s.apply_cz(q, r);
    Mat p1(2, 2);
    p1 << 0, 0, 0, 1;
    v = (Mat::Identity(16, 16) - 2.0 * oracle::product_on(n, {q, r}, p1)) * v;
    const auto p = oracle::random_pauli(n, rng);
    s.apply_pauli(p);
    v = oracle::pauli_matrix(p) * v;
  }
  EXPECT_LT((oracle::to_vec(s) - v).norm(), 1e-10);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
}

TEST(ApplyUniformRotation, Examples) {
  std::mt19937_64 rng(7);
  const StateVector s = oracle::to_state(3, oracle::random_pure(3, rng));
  const StateVector same = apply_uniform_rotation(s, {0, 1, 0}, 0.0);
  EXPECT_NEAR(std::abs(s.inner(same)), 1.0, 1e-15);

  const StateVector plus = apply_uniform_rotation(StateVector(3), {0, 1, 0}, kPi / 2);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(plus.amplitude(i).real(), 1 / std::sqrt(8.0), 1e-12);

  // <Z> after rotating about y by -theta equals <cos Z + sin X> before.
  const double theta = 0.37;
  const StateVector rotated = apply_uniform_rotation(s, {0, 1, 0}, -theta);
  const Mat single = std::cos(theta) * oracle::letter_matrix('Z') +
                     std::sin(theta) * oracle::letter_matrix('X');
  const Vec v = oracle::to_vec(s);
  const double before =
      (v.adjoint() * oracle::product_on(3, {1}, single) * v)(0, 0).real();
  EXPECT_NEAR(rotated.expectation(PauliString::parse("IZI")), before, 1e-12);
  EXPECT_THROW(apply_uniform_rotation(s, {1, 1, 0}, 0.1), ArgumentError);
}

TEST(ApplyUniformRotation, PreservesNormOverManyOperations) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  StateVector s = oracle::to_state(5, oracle::random_pure(5, rng));
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng);
    s = apply_uniform_rotation(std::move(s), {std::sin(a) * std::cos(b), std::sin(a) * std::sin(b), std::cos(a)}, u(rng));
  }
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
}

TEST(BasisChangeToZ, MapsDirectionOntoZ) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 50; ++i) {
    const double a = u(rng), b = u(rng);
    const MeasurementDirection d(std::sin(a) * std::cos(b), std::sin(a) * std::sin(b), std::cos(a));
    const Matrix2 m = basis_change_to_z(d);
    Mat V(2, 2);
    V << m[0], m[1], m[2], m[3];
    const Mat lhs = V.adjoint() * oracle::letter_matrix('Z') * V;
    EXPECT_LT((lhs - oracle::direction_matrix(d.nx(), d.ny(), d.nz())).norm(), 1e-12);
  }
}

TEST(Expectation, Examples) {
  const auto rho = MixedStateEnsemble::pure(prepare_graph_state(GraphSpec::path(3)));
  EXPECT_NEAR(expectation(rho, PauliString::parse("ZXZ")), 1.0, 1e-12);
  const PauliSum m2{{1.0, PauliString::parse("ZXZ")},
                    {1.0, PauliString::parse("ZZX")},
                    {1.0, PauliString::parse("XZZ")}};
  EXPECT_NEAR(expectation(rho, m2), 1.0, 1e-12);
  const auto mixed = MixedStateEnsemble::maximally_mixed(3);
  EXPECT_NEAR(expectation(mixed, PauliString::parse("XYZ")), 0.0, 1e-12);
  EXPECT_NEAR(expectation(mixed, PauliString::parse("IZI")), 0.0, 1e-12);
  EXPECT_THROW(MixedStateEnsemble::maximally_mixed(13), CapabilityError);
}

TEST(Expectation, MatchesDenseTraceForEnsembles) {
  std::mt19937_64 rng(12);
  const std::size_t n = 3;
  std::vector<MixedStateEnsemble::Member> members;
  const double w[] = {0.5, 0.3, 0.2};
  for (double wi : w) members.push_back({wi, oracle::to_state(n, oracle::random_pure(n, rng))});
  const MixedStateEnsemble rho(members);
  const Mat dense = oracle::density(rho);
  for (int k = 0; k < 50; ++k) {
    const auto p = oracle::random_pauli(n, rng);
    EXPECT_NEAR(expectation(rho, p), oracle::expect(dense, oracle::pauli_matrix(p)), 1e-12);
  }
}

TEST(Noise, ReplaceWithOrthogonalSetsFidelity) {
  const GraphSpec g = GraphSpec::path(5);
  const StateVector psi = prepare_graph_state(g);
  const auto rho0 = apply_noise(MixedStateEnsemble::pure(psi), ReplaceWithOrthogonal{0.0}, 1);
  EXPECT_NEAR(fidelity(rho0, psi), 1.0, 1e-12);
  const auto rho = apply_noise(MixedStateEnsemble::pure(psi), ReplaceWithOrthogonal{0.3}, 1);
  EXPECT_NEAR(fidelity(rho, psi), 0.7, 1e-10);
  const auto t = graph_state_tableau(g);
  const double via_group = fidelity_with_stabilizer_state(
      t, [&](const PauliString& p) { return expectation(rho, p); });
  EXPECT_NEAR(via_group, 0.7, 1e-10);
  EXPECT_THROW(apply_noise(rho, ReplaceWithOrthogonal{0.1}, 1), ArgumentError);
  EXPECT_THROW(apply_noise(rho0, ReplaceWithOrthogonal{1.5}, 1), ArgumentError);
}

TEST(Noise, DepolarizingShrinksStabilizersMonotonically) {
  const GraphSpec g = GraphSpec::path(4);
  const auto pure = MixedStateEnsemble::pure(prepare_graph_state(g));
  const auto t = graph_state_tableau(g);
  double previous = 2.0;
  for (double p : {0.0, 0.1, 0.3, 0.6, 1.0}) {
    const auto rho = apply_noise(pure, Depolarizing{p}, 0);
    const double e = expectation(rho, t.generators()[1]);
    EXPECT_NEAR(e, 1.0 - p, 1e-12);
    EXPECT_LT(e, previous);
    previous = e;
  }
  EXPECT_THROW(apply_noise(pure, Depolarizing{-0.1}, 0), ArgumentError);
}

TEST(Noise, ZRotationMatchesDense) {
  const StateVector psi = prepare_graph_state(GraphSpec::path(3));
  const auto rho = apply_noise(MixedStateEnsemble::pure(psi), SingleQubitZRotation{1, 0.4}, 0);
  const Vec v = oracle::product_on(3, {1}, dense_rotation({0, 0, 1}, 0.4)) * oracle::to_vec(psi);
  EXPECT_NEAR(std::abs(v.dot(oracle::to_vec(rho.members()[0].state))), 1.0, 1e-12);
}

TEST(Fidelity, Examples) {
  std::mt19937_64 rng(14);
  const StateVector a = oracle::to_state(3, oracle::random_pure(3, rng));
  EXPECT_NEAR(fidelity(MixedStateEnsemble::pure(a), a), 1.0, 1e-12);
  const StateVector b = orthogonalize(oracle::to_state(3, oracle::random_pure(3, rng)), a);
  EXPECT_NEAR(fidelity(MixedStateEnsemble::pure(b), a), 0.0, 1e-12);
}

TEST(Sampling, Examples) {
  const auto zero = MixedStateEnsemble::pure(StateVector(3));
  const auto rz = sample_uniform_measurement(zero, MeasurementDirection::along(Axis::Z), 100, 1);
  for (auto o : rz.outcomes()) EXPECT_EQ(o, 1);
  const std::size_t T = 40000;
  const auto rx = sample_uniform_measurement(zero, MeasurementDirection::along(Axis::X), T, 2);
  for (std::size_t q = 0; q < 3; ++q) EXPECT_LE(std::abs(record_mean(rx, {q})), 5 / std::sqrt(T));
  const auto graph = MixedStateEnsemble::pure(prepare_graph_state(GraphSpec::path(3)));
  const auto rg = sample_uniform_measurement(graph, MeasurementDirection::along(Axis::X), T, 3);
  const int exact = graph_state_tableau(GraphSpec::path(3)).expectation(PauliString::parse("XXX"));
  EXPECT_LE(std::abs(record_mean(rg, {0, 1, 2}) - exact), 5 / std::sqrt(T));
  EXPECT_THROW(sample_uniform_measurement(zero, MeasurementDirection::along(Axis::Z), 0, 1),
               ArgumentError);
}

TEST(Sampling, PerQubitMeansConvergeOnRandomStates) {
  std::mt19937_64 rng(15);
  const std::size_t n = 4, T = 20000;
  for (int rep = 0; rep < 3; ++rep) {
    const auto rho = MixedStateEnsemble::pure(oracle::to_state(n, oracle::random_pure(n, rng)));
    for (double theta : {kPi / 2, kPi / 4, 3 * kPi / 4}) {
      const auto dir = MeasurementDirection::in_xz_plane(theta);
      const auto rec = sample_uniform_measurement(rho, dir, T, 100 + rep);
      const Mat dense = oracle::density(rho);
      for (std::size_t q = 0; q < n; ++q) {
        const double exact = oracle::expect(
            dense, oracle::product_on(n, {q}, oracle::direction_matrix(dir.nx(), 0, dir.nz())));
        EXPECT_LE(std::abs(record_mean(rec, {q}) - exact), 5 / std::sqrt(double(T)));
      }
    }
  }
}

TEST(Sampling, ReproducibleForFixedSeed) {
  std::mt19937_64 rng(16);
  std::vector<MixedStateEnsemble::Member> m;
  m.push_back({0.6, oracle::to_state(3, oracle::random_pure(3, rng))});
  m.push_back({0.4, oracle::to_state(3, oracle::random_pure(3, rng))});
  const MixedStateEnsemble rho(m);
  const auto dir = MeasurementDirection::in_xz_plane(0.3);
  EXPECT_EQ(sample_uniform_measurement(rho, dir, 500, 9), sample_uniform_measurement(rho, dir, 500, 9));
  EXPECT_NE(sample_uniform_measurement(rho, dir, 500, 9), sample_uniform_measurement(rho, dir, 500, 10));
}

TEST(Sampling, HistogramAndPerShotAgreeInDistribution) {
  // Both paths draw from the same Born distribution; compare a correlator.
  const auto rho = MixedStateEnsemble::pure(prepare_graph_state(GraphSpec::path(3)));
  const auto dir = MeasurementDirection::in_xz_plane(kPi / 4);
  const auto probs = outcome_probabilities(rho, dir);
  const std::uint64_t T = 200000;
  const auto hist = sample_outcome_counts(probs, dir, 3, T, 4);
  const auto rec = tabulate(sample_uniform_measurement(rho, dir, T, 4));
  const auto exact = exact_distribution(probs, dir, 3);
  const std::uint64_t all = qubit_mask(3, std::vector<std::size_t>{0, 1, 2});
  const double e = exact.product_expectation(all);
  EXPECT_NEAR(hist.product_expectation(all), e, 5 / std::sqrt(double(T)));
  EXPECT_NEAR(rec.product_expectation(all), e, 5 / std::sqrt(double(T)));
  double total = 0.0;
  for (const auto& entry : hist.entries) total += entry.weight;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(MeasurementRecord, ValidatesShape) {
  const auto d = MeasurementDirection::along(Axis::X);
  EXPECT_THROW(MeasurementRecord(d, 2, 2, {1, 1, 1}), DimensionError);
  EXPECT_THROW(MeasurementRecord(d, 1, 1, {0}), ArgumentError);
  const MeasurementRecord r(d, 2, 2, {1, -1, -1, 1});
  EXPECT_EQ(r.at(1, 0), -1);
  const auto h = tabulate(r);
  EXPECT_NEAR(h.product_expectation(0b11), -1.0, 1e-15);
}

}  // namespace
}  // namespace unicert

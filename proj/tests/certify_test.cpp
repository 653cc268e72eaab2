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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "dense_oracle.hpp"
#include "unicert/errors.hpp"
#include "unicert/random.hpp"

namespace unicert {
namespace {

using oracle::Mat;
using oracle::Vec;

std::set<std::string> term_set(const PauliSum& sum) {
  std::set<std::string> out;
  for (const auto& t : sum) {
    EXPECT_EQ(t.coefficient, 1.0);
    out.insert(t.pauli.str());
  }
  return out;
}

// <M_v> straight from the dense density matrix and the closed neighbourhood.
double dense_combination(const Mat& rho, const GraphSpec& g, std::size_t v) {
  const std::size_t n = g.num_vertices();
  const auto hood = g.closed_neighborhood(v);
  double sum = 0.0;
  for (std::size_t x : hood) {
    std::vector<Mat> f(n, Mat::Identity(2, 2));
    for (std::size_t q : hood) f[q] = oracle::letter_matrix(q == x ? 'X' : 'Z');
    sum += oracle::expect(rho, oracle::kron_all(f));
  }
  return sum;
}

MixedStateEnsemble ensemble_from(std::size_t n, const Vec& v) {
  return MixedStateEnsemble::pure(oracle::to_state(n, v));
}

TEST(StabilizerCombinations, PathExamples) {
  const auto m = stabilizer_combinations(GraphSpec::path(3));
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(term_set(m[1]), (std::set<std::string>{"+ZXZ", "+ZZX", "+XZZ"}));
  EXPECT_EQ(term_set(m[0]), (std::set<std::string>{"+XZI", "+ZXI"}));
  EXPECT_EQ(term_set(m[2]), (std::set<std::string>{"+IXZ", "+IZX"}));
}

TEST(StabilizerCombinations, FourCycle) {
  const auto m = stabilizer_combinations(GraphSpec::cycle(4));
  EXPECT_EQ(term_set(m[0]), (std::set<std::string>{"+XZIZ", "+ZXIZ", "+ZZIX"}));
}

TEST(StabilizerCombinations, RejectsGraphsWithoutEvenSide) {
  try {
    stabilizer_combinations(GraphSpec::path(4));
    FAIL() << "expected NotCertifiableError";
  } catch (const NotCertifiableError& e) {
    EXPECT_LT(e.vertex(), 4u);
    EXPECT_NE(std::string(e.what()).find("vertex"), std::string::npos);
  }
  EXPECT_THROW(stabilizer_combinations(GraphSpec::cycle(5)), NotCertifiableError);
}

TEST(CertificationPlan, PathUsesThreeFixedBases) {
  const auto plan = make_certification_plan(GraphSpec::path(5));
  EXPECT_TRUE(plan.path_schedule);
  ASSERT_EQ(plan.bases.size(), 3u);
  EXPECT_EQ(plan.bases[plan.x_basis].label, "x");
  EXPECT_EQ(plan.symmetry_side, (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_NEAR(plan.estimators[2].range(), 2 * std::sqrt(2.0) + 1, 1e-12);
  EXPECT_NEAR(plan.estimators[0].range(), 2.0, 1e-12);
}

TEST(CertificationPlan, EstimatorConstantsAgreeWithDecomposition) {
  const auto& c = path_estimator_constants();
  EXPECT_NEAR(c.interior_plus_minus, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(c.interior_x, -1.0, 1e-12);
  EXPECT_NEAR(c.boundary, 1.0, 1e-12);
  // Independent check: invert the 3x3 and 2x2 decompositions by hand.
  // At theta = pi/4 and 3pi/4 every cos^a sin^(k-a) has magnitude 2^(-k/2).
  const double r = std::pow(2.0, -1.5);
  // sqrt(2) (E+ + E-) - E_x with E_x = E(0): coefficient of E(2) is
  // sqrt(2) * 2r = 1, of E(0) is sqrt(2) * 2r - 1 = 0.
  EXPECT_NEAR(c.interior_plus_minus * 2 * r, 1.0, 1e-12);
  EXPECT_NEAR(c.interior_plus_minus * 2 * r + c.interior_x, 0.0, 1e-12);
}

TEST(Estimates, ExactTargetAndMaximallyMixed) {
  const GraphSpec g = GraphSpec::path(3);
  const auto plan = make_certification_plan(g);
  const auto target = exact_estimates(plan, MixedStateEnsemble::pure(prepare_graph_state(g)));
  EXPECT_NEAR(target.u_hat, 1.0, 1e-12);
  for (double m : target.m_hat) EXPECT_NEAR(m, 1.0, 1e-12);
  const auto mixed = exact_estimates(plan, MixedStateEnsemble::maximally_mixed(3));
  EXPECT_NEAR(mixed.u_hat, 0.0, 1e-12);
  for (double m : mixed.m_hat) EXPECT_NEAR(m, 0.0, 1e-12);
}

TEST(Estimates, ThreeBasisIdentityOnRandomStates) {
  std::mt19937_64 rng(1);
  const GraphSpec g = GraphSpec::path(5);
  const auto plan = make_certification_plan(g);
  for (int rep = 0; rep < 20; ++rep) {
    const Vec v = oracle::random_pure(5, rng);
    const Mat rho = v * v.adjoint();
    const auto e = exact_estimates(plan, ensemble_from(5, v));
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(e.m_hat[i], dense_combination(rho, g, i), 1e-9);
    EXPECT_NEAR(e.u_hat, oracle::expect(rho, oracle::pauli_matrix(PauliString::parse("XIXIX"))), 1e-9);
  }
}

TEST(Estimates, GeneralGraphScheduleRecoversCombinations) {
  std::mt19937_64 rng(2);
  // 4-cycle, a star whose centre has degree 4, and K_{2,4}.
  const std::vector<GraphSpec> graphs{
      GraphSpec::cycle(4), GraphSpec(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}),
      GraphSpec(6, {{0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {1, 4}, {1, 5}})};
  for (const auto& g : graphs) {
    ASSERT_TRUE(find_even_degree_bipartition(g).has_value());
    const auto plan = make_certification_plan(g);
    EXPECT_FALSE(plan.path_schedule);
    const std::size_t n = g.num_vertices();
    const Vec v = oracle::random_pure(n, rng);
    const auto e = exact_estimates(plan, ensemble_from(n, v));
    const Mat rho = v * v.adjoint();
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(e.m_hat[i], dense_combination(rho, g, i), 1e-8);
  }
}

TEST(Estimates, UnbiasedUnderFiniteSampling) {
  std::mt19937_64 rng(3);
  const GraphSpec g = GraphSpec::path(3);
  const auto plan = make_certification_plan(g);
  const Vec v = oracle::random_pure(3, rng);
  const auto rho = ensemble_from(3, v);
  const auto exact = exact_estimates(plan, rho);
  const std::uint64_t T = 10000;
  const int reps = 100;
  std::vector<std::vector<double>> probs;
  for (const auto& b : plan.bases) probs.push_back(outcome_probabilities(rho, b.direction));
  std::vector<double> sum(4, 0.0), sq(4, 0.0);
  for (int r = 0; r < reps; ++r) {
    std::vector<OutcomeDistribution> d;
    for (std::size_t b = 0; b < plan.bases.size(); ++b) {
      d.push_back(sample_outcome_counts(probs[b], plan.bases[b].direction, 3, T,
                                        derive_seed(r, b)));
    }
    const auto e = estimate_from_distributions(plan, d);
    for (std::size_t i = 0; i < 3; ++i) {
      sum[i] += e.m_hat[i];
      sq[i] += e.m_hat[i] * e.m_hat[i];
    }
    sum[3] += e.u_hat;
    sq[3] += e.u_hat * e.u_hat;
  }
  for (std::size_t i = 0; i < 4; ++i) {
    const double mean = sum[i] / reps;
    const double se = std::sqrt((sq[i] / reps - mean * mean) / reps);
    const double want = i < 3 ? exact.m_hat[i] : exact.u_hat;
    EXPECT_LE(std::abs(mean - want), 5 * se + 1e-12) << i;
  }
}

TEST(Estimates, RejectsMismatchedInputs) {
  const auto plan = make_certification_plan(GraphSpec::path(3));
  const auto rho = MixedStateEnsemble::pure(prepare_graph_state(GraphSpec::path(3)));
  std::vector<OutcomeDistribution> d;
  for (const auto& b : plan.bases) d.push_back(exact_distribution(outcome_probabilities(rho, b.direction), b.direction, 3));
  auto wrong_basis = d;
  wrong_basis[0].basis = MeasurementDirection::along(Axis::Y);
  EXPECT_THROW(estimate_from_distributions(plan, wrong_basis), ArgumentError);
  auto wrong_shots = d;
  wrong_shots[1].shots = 7;
  EXPECT_THROW(estimate_from_distributions(plan, wrong_shots), ArgumentError);
  d.pop_back();
  EXPECT_THROW(estimate_from_distributions(plan, d), DimensionError);
}

TEST(DefaultShotCount, Examples) {
  EXPECT_EQ(default_shot_count(0.01), 31807u);
  EXPECT_EQ(default_shot_count(0.1), 319u);
  const double e = 0.003;
  const double ratio = double(default_shot_count(e / 2)) / double(default_shot_count(e));
  EXPECT_NEAR(ratio, 4.0, 1e-3);
  // Recomputed here from the formula.
  EXPECT_EQ(default_shot_count(0.05),
            static_cast<std::uint64_t>(std::ceil(32.0 * std::log(12.0) / (25.0 * 0.0025))));
  EXPECT_THROW(default_shot_count(0.0), ArgumentError);
  EXPECT_THROW(default_shot_count(-1.0), ArgumentError);
}

TEST(Decide, ThresholdsAndTies) {
  const double eps = 1e-4;
  EXPECT_NEAR(symmetry_threshold(eps), 1 - 13 * eps / 4, 1e-15);
  EXPECT_NEAR(combination_threshold(eps), 1 - 9 * std::sqrt(eps), 1e-15);
  const double u_tie = symmetry_threshold(eps), m_tie = combination_threshold(eps);
  EXPECT_EQ(decide(u_tie, {1.0, 1.0}, eps), Verdict::Certified);          // step 2 passes on a tie
  EXPECT_EQ(decide(std::nextafter(u_tie, 0.0), {1.0}, eps), Verdict::Failed);
  EXPECT_EQ(decide(1.0, {1.0, m_tie}, eps), Verdict::Failed);             // step 3 needs strict
  EXPECT_EQ(decide(1.0, {1.0, std::nextafter(m_tie, 2.0)}, eps), Verdict::Certified);
}

TEST(Validate, EpsilonRange) {
  EXPECT_NO_THROW(validate(CertificationConfig{1.0 / (64 * 25) * 0.99, 0, 0}, 5));
  EXPECT_THROW(validate(CertificationConfig{1.0 / (64 * 25), 0, 0}, 5), ConfigurationError);
  EXPECT_THROW(validate(CertificationConfig{0.0, 0, 0}, 5), ConfigurationError);
}

TEST(Certify, PerfectStateCertifiesMostly) {
  const GraphSpec g = GraphSpec::path(5);
  const EnsembleSource source(MixedStateEnsemble::pure(prepare_graph_state(g)));
  const double eps = 1.0 / (64 * 25 * 2);
  int certified = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto r = certify(source, g, CertificationConfig{eps, 0, seed});
    EXPECT_EQ(r.shots, default_shot_count(eps));
    EXPECT_FALSE(r.shots_overridden);
    certified += r.verdict == Verdict::Certified;
  }
  EXPECT_GE(certified, 20);
}

TEST(Certify, LowFidelityFailsMostly) {
  const GraphSpec g = GraphSpec::path(3);
  const double eps = 1.0 / (128 * 9);
  const double f = 1 - 8 * 3 * std::sqrt(eps) - 0.01;
  const auto rho = apply_noise(MixedStateEnsemble::pure(prepare_graph_state(g)),
                               ReplaceWithOrthogonal{1 - f}, 5);
  const EnsembleSource source(rho);
  int failed = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    failed += certify(source, g, CertificationConfig{eps, 0, seed}).verdict == Verdict::Failed;
  }
  EXPECT_GE(failed, 20);
}

TEST(Certify, ConfigurationErrorsAndOverride) {
  const GraphSpec g = GraphSpec::path(3);
  const EnsembleSource source(MixedStateEnsemble::pure(prepare_graph_state(g)));
  EXPECT_THROW(certify(source, g, CertificationConfig{0.1, 0, 0}), ConfigurationError);
  const auto r = certify(source, g, CertificationConfig{1e-3, 500, 0});
  EXPECT_TRUE(r.shots_overridden);
  EXPECT_EQ(r.shots, 500u);
  EXPECT_THROW(certify(source, GraphSpec::path(5), CertificationConfig{1e-4, 0, 0}),
               DimensionError);
}

TEST(Certify, DeterministicForSameRecords) {
  const GraphSpec g = GraphSpec::path(3);
  const auto plan = make_certification_plan(g);
  const auto rho = MixedStateEnsemble::pure(prepare_graph_state(g));
  std::vector<MeasurementRecord> records;
  for (std::size_t b = 0; b < plan.bases.size(); ++b) {
    records.push_back(sample_uniform_measurement(rho, plan.bases[b].direction, 2000, b));
  }
  const RecordSource source(records);
  const CertificationConfig cfg{1e-3, 2000, 0};
  const auto a = certify(source, g, cfg), b = certify(source, g, cfg);
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_EQ(a.u_hat, b.u_hat);
  EXPECT_EQ(a.m_hat, b.m_hat);
  // Order of record files does not matter.
  std::vector<MeasurementRecord> reversed(records.rbegin(), records.rend());
  EXPECT_EQ(certify(RecordSource(reversed), g, cfg).m_hat, a.m_hat);
  EXPECT_THROW(certify(source, g, CertificationConfig{1e-3, 1000, 0}), ArgumentError);
}

TEST(Certify, PerShotAndHistogramSamplersBothWork) {
  const GraphSpec g = GraphSpec::path(3);
  const auto rho = MixedStateEnsemble::pure(prepare_graph_state(g));
  const EnsembleSource hist(rho), shot(rho, EnsembleSource::Mode::PerShot);
  const CertificationConfig cfg{1e-3, 0, 4};
  EXPECT_EQ(certify(hist, g, cfg).verdict, Verdict::Certified);
  EXPECT_EQ(certify(shot, g, cfg).verdict, Verdict::Certified);
}

TEST(Bounds, AnticommutingBoundOnNearlySymmetricStates) {
  std::mt19937_64 rng(6);
  const std::size_t n = 3;
  const Mat ux = oracle::pauli_matrix(PauliString::parse("XIX"));
  const Mat zx = oracle::pauli_matrix(PauliString::parse("ZXI"));
  const Mat proj = (Mat::Identity(8, 8) + ux) / 2.0;
  EXPECT_EQ(anticommuting_expectation_bound(1.0), 0.0);
  for (int rep = 0; rep < 200; ++rep) {
    // Project a random state toward the +1 sector of U_X.
    const Vec v = oracle::random_pure(n, rng);
    const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    Vec w = proj * v + t * (Mat::Identity(8, 8) - proj) * v;
    w /= w.norm();
    const Mat rho = w * w.adjoint();
    const double u = oracle::expect(rho, ux);
    EXPECT_LE(std::abs(oracle::expect(rho, zx)), anticommuting_expectation_bound(u) + 1e-12);
  }
}

TEST(Bounds, Examples) {
  EXPECT_NEAR(fidelity_upper_bound_from_symmetry(1.0), 1.0, 1e-15);
  EXPECT_NEAR(fidelity_upper_bound_from_symmetry(-1.0), 0.0, 1e-15);
  EXPECT_NEAR(fidelity_lower_bound_from_generators({1.0, 1.0, 1.0}), 1.0, 1e-15);
  EXPECT_NEAR(group_element_lower_bound(1.0), 1.0, 1e-15);
}

TEST(Bounds, FidelityBoundsOnRandomStates) {
  std::mt19937_64 rng(8);
  for (std::size_t n : {3u, 5u}) {
    const GraphSpec g = GraphSpec::path(n);
    const auto t = graph_state_tableau(g);
    const Vec psi = oracle::graph_state(g);
    PauliString u(n);
    for (std::size_t q = 0; q < n; q += 2) u.set_letter(q, 'X');
    for (int rep = 0; rep < 50; ++rep) {
      const double p = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
      Vec phi = oracle::random_pure(n, rng);
      const Mat rho = (1 - p) * psi * psi.adjoint() + p * phi * phi.adjoint();
      const double f = (psi.adjoint() * rho * psi)(0, 0).real();
      std::vector<double> gens;
      for (const auto& gen : t.generators()) gens.push_back(oracle::expect(rho, oracle::pauli_matrix(gen)));
      EXPECT_GE(f, fidelity_lower_bound_from_generators(gens) - 1e-9);
      const double floor = group_element_lower_bound(f);
      t.for_each_group_element([&](const PauliString& e) {
        EXPECT_GE(oracle::expect(rho, oracle::pauli_matrix(e)), floor - 1e-9);
      });
      EXPECT_LE(f, fidelity_upper_bound_from_symmetry(oracle::expect(rho, oracle::pauli_matrix(u))) + 1e-9);
    }
  }
}

TEST(MonteCarlo, WilsonIntervalMatchesFormula) {
  const auto [lo, hi] = wilson_interval(150, 200);
  const double z = 1.959964, n = 200, p = 0.75;
  const double c = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double h = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n);
  EXPECT_NEAR(lo, c - h, 1e-12);
  EXPECT_NEAR(hi, c + h, 1e-12);
  EXPECT_THROW(wilson_interval(3, 2), ArgumentError);
}

TEST(MonteCarlo, RegimesAndSmallRun) {
  EXPECT_EQ(regime_of({5, 1e-4, 1.0}), FidelityRegime::High);
  EXPECT_EQ(regime_of({5, 1e-4, 0.5}), FidelityRegime::Low);
  EXPECT_EQ(regime_of({5, 1e-4, 0.9}), FidelityRegime::Intermediate);
  const auto rows = monte_carlo_validation({{3, 1.0 / 1152, 1.0}, {3, 1.0 / 1152, 0.3}}, 100, 1);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_TRUE(rows[0].consistent);
  EXPECT_TRUE(rows[1].consistent);
  EXPECT_EQ(rows[0].verdicts.size(), 100u);
  EXPECT_THROW(monte_carlo_validation({{3, 1e-3, 1.0}}, 99, 1), ArgumentError);
  // Same seed, same table.
  const auto again = monte_carlo_validation({{3, 1.0 / 1152, 1.0}}, 100, 1);
  EXPECT_EQ(again[0].verdicts, rows[0].verdicts);
}

}  // namespace
}  // namespace unicert

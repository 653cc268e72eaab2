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

#include "unicert/pauli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "dense_oracle.hpp"
#include "unicert/errors.hpp"

namespace unicert {
namespace {

using oracle::Mat;

std::set<std::string> letters_of(const std::vector<PauliString>& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(p.str().substr(1));
  return out;
}

bool dense_anticommute(const PauliString& a, const PauliString& b) {
  const Mat A = oracle::pauli_matrix(a), B = oracle::pauli_matrix(b);
  return (A * B + B * A).norm() < 1e-12;
}

PauliString nth_string(std::size_t n, std::size_t code) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) {
    p.set_letter(q, "IXYZ"[code % 4]);
    code /= 4;
  }
  return p;
}

TEST(PauliString, ParseAndFormatRoundTrip) {
  const auto p = PauliString::parse("-XIZY");
  EXPECT_EQ(p.num_qubits(), 4u);
  EXPECT_EQ(p.sign(), -1);
  EXPECT_EQ(p.letter(3), 'Y');
  EXPECT_TRUE(p.x(3) && p.z(3));
  EXPECT_EQ(p.str(), "-XIZY");
  EXPECT_EQ(PauliString::parse("XZ").str(), "+XZ");
  EXPECT_EQ(p.weight(), 3u);
  EXPECT_THROW(PauliString::parse("XQ"), ParseError);
  EXPECT_THROW(PauliString::parse(""), ParseError);
}

TEST(PauliString, MasksPutQubitZeroFirst) {
  const auto p = PauliString::parse("XIZ");
  EXPECT_EQ(p.x_mask(), 0b100u);
  EXPECT_EQ(p.z_mask(), 0b001u);
}

TEST(PauliString, StoredOperatorIsHermitianInvolution) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = oracle::random_pauli(3, rng);
    const Mat m = oracle::pauli_matrix(p);
    EXPECT_LT((m - m.adjoint()).norm(), 1e-12);
    EXPECT_LT((m * m - Mat::Identity(8, 8)).norm(), 1e-12);
  }
}

TEST(Anticommutes, Examples) {
  EXPECT_TRUE(anticommutes(PauliString::parse("XI"), PauliString::parse("ZI")));
  EXPECT_FALSE(anticommutes(PauliString::parse("XX"), PauliString::parse("ZZ")));
  EXPECT_TRUE(anticommutes(PauliString::parse("ZZX"), PauliString::parse("XIX")));
  EXPECT_TRUE(dense_anticommute(PauliString::parse("ZZX"), PauliString::parse("XIX")));
  EXPECT_THROW(anticommutes(PauliString::parse("X"), PauliString::parse("XX")), DimensionError);
}

TEST(Anticommutes, MatchesDenseExhaustivelyUpToThreeQubits) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const std::size_t count = std::size_t{1} << (2 * n);
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = 0; b < count; ++b) {
        const auto pa = nth_string(n, a), pb = nth_string(n, b);
        ASSERT_EQ(anticommutes(pa, pb), dense_anticommute(pa, pb)) << pa.str() << " " << pb.str();
      }
    }
  }
}

TEST(Anticommutes, MatchesDenseExhaustivelyAtFourQubits) {
  // Letters are independent per qubit, so pairs of 4-qubit strings reduce to
  // counting single-qubit anticommuting letter pairs; check that against the
  // dense product on every pair.
  const std::size_t count = 256;
  std::vector<Mat> mats;
  for (std::size_t a = 0; a < count; ++a) mats.push_back(oracle::pauli_matrix(nth_string(4, a)));
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a; b < count; ++b) {
      const bool dense = (mats[a] * mats[b] + mats[b] * mats[a]).norm() < 1e-12;
      ASSERT_EQ(anticommutes(nth_string(4, a), nth_string(4, b)), dense);
    }
  }
}

TEST(Anticommutes, MatchesDenseOnRandomPairsUpToEightQubits) {
  std::mt19937_64 rng(7);
  for (std::size_t n = 5; n <= 8; ++n) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = oracle::random_pauli(n, rng), b = oracle::random_pauli(n, rng);
      ASSERT_EQ(anticommutes(a, b), dense_anticommute(a, b));
    }
  }
}

TEST(MultiplyCommuting, MatchesDenseProduct) {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 200) {
    const auto a = oracle::random_pauli(3, rng), b = oracle::random_pauli(3, rng);
    if (anticommutes(a, b)) continue;
    ++checked;
    const Mat want = oracle::pauli_matrix(a) * oracle::pauli_matrix(b);
    ASSERT_LT((oracle::pauli_matrix(multiply_commuting(a, b)) - want).norm(), 1e-12);
  }
  EXPECT_THROW(multiply_commuting(PauliString::parse("X"), PauliString::parse("Z")),
               ArgumentError);
}

TEST(SymmetricOperators, ThreeQubitExample) {
  const auto set = symmetric_operators(3, {0, 1, 2});
  ASSERT_EQ(set.terms_by_alpha.size(), 4u);
  EXPECT_EQ(letters_of(set.terms_by_alpha[1]),
            (std::set<std::string>{"XXZ", "XZX", "ZXX"}));
  EXPECT_EQ(letters_of(set.terms_by_alpha[0]), (std::set<std::string>{"XXX"}));
  EXPECT_EQ(letters_of(set.terms_by_alpha[3]), (std::set<std::string>{"ZZZ"}));
}

TEST(SymmetricOperators, SmallSupports) {
  const auto one = symmetric_operators(1, {0});
  EXPECT_EQ(letters_of(one.terms_by_alpha[0]), (std::set<std::string>{"X"}));
  EXPECT_EQ(letters_of(one.terms_by_alpha[1]), (std::set<std::string>{"Z"}));
  const auto two = symmetric_operators(2, {0, 1});
  EXPECT_EQ(letters_of(two.terms_by_alpha[1]), (std::set<std::string>{"ZX", "XZ"}));
}

TEST(SymmetricOperators, BinomialCountsAndExactSupport) {
  for (std::size_t k = 1; k <= 6; ++k) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < k; ++i) support.push_back(2 * i);
    const auto set = symmetric_operators(2 * k, support, {Axis::Y, Axis::Z});
    std::set<std::string> all;
    for (std::size_t a = 0; a <= k; ++a) {
      double binom = 1.0;
      for (std::size_t j = 1; j <= a; ++j) binom = binom * static_cast<double>(k - a + j) / j;
      EXPECT_EQ(set.terms_by_alpha[a].size(), static_cast<std::size_t>(std::lround(binom)));
      for (const auto& p : set.terms_by_alpha[a]) {
        EXPECT_EQ(p.support(), support);
        std::size_t ys = 0;
        for (std::size_t q : support) ys += p.letter(q) == 'Y';
        EXPECT_EQ(ys, a);
        all.insert(p.str());
      }
    }
    EXPECT_EQ(all.size(), std::size_t{1} << k);  // every two-letter string once
  }
}

TEST(SymmetricOperators, RejectsBadInput) {
  EXPECT_THROW(symmetric_operators(3, {}), ArgumentError);
  EXPECT_THROW(symmetric_operators(3, {0, 0}), ArgumentError);
  EXPECT_THROW(symmetric_operators(3, {3}), ArgumentError);
  EXPECT_THROW(symmetric_operators(3, {0}, {Axis::X, Axis::X}), ArgumentError);
}

TEST(CountIndependentOperators, Examples) {
  EXPECT_EQ(count_independent_operators(1), 3u);
  EXPECT_EQ(count_independent_operators(2), 12u);
  EXPECT_EQ(count_independent_operators(3), 37u);
  EXPECT_THROW(count_independent_operators(0), ArgumentError);
}

TEST(CountIndependentOperators, ClosedFormForLargerN) {
  for (std::uint64_t n = 3; n <= 40; ++n) {
    const std::uint64_t closed = (std::uint64_t{1} << (n - 3)) * (n * n + 7 * n + 8) - 1;
    EXPECT_EQ(count_independent_operators(n), closed) << n;
  }
}

TEST(UniformDecomposition, Examples) {
  auto d = uniform_expectation_decomposition(1, 0.0);
  ASSERT_EQ(d.size(), 2u);
  for (const auto& t : d) EXPECT_NEAR(t.coefficient, t.alpha == 1 ? 1.0 : 0.0, 1e-15);
  d = uniform_expectation_decomposition(1, std::numbers::pi / 2);
  for (const auto& t : d) EXPECT_NEAR(t.coefficient, t.alpha == 0 ? 1.0 : 0.0, 1e-15);
  d = uniform_expectation_decomposition(2, std::numbers::pi / 4);
  for (const auto& t : d) EXPECT_NEAR(t.coefficient, 0.5, 1e-15);
}

TEST(UniformDecomposition, ReconstructsProductExpectationOnRandomStates) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  const std::size_t n = 4;
  for (int trial = 0; trial < 20; ++trial) {
    const Mat rho = oracle::random_density(n, rng);
    const std::vector<std::size_t> support = trial % 2 ? std::vector<std::size_t>{0, 2, 3}
                                                       : std::vector<std::size_t>{1, 2};
    const double theta = angle(rng);
    const Mat single = std::cos(theta) * oracle::letter_matrix('Z') +
                       std::sin(theta) * oracle::letter_matrix('X');
    const double direct = oracle::expect(rho, oracle::product_on(n, support, single));
    const auto set = symmetric_operators(n, support);
    double sum = 0.0;
    for (const auto& t : uniform_expectation_decomposition(support.size(), theta)) {
      for (const auto& p : set.terms_by_alpha[t.alpha]) {
        sum += t.coefficient * oracle::expect(rho, oracle::pauli_matrix(p));
      }
    }
    EXPECT_NEAR(sum, direct, 1e-10);
  }
}

TEST(SolveSymmetricExpectations, RecoversEachSymmetricSum) {
  std::mt19937_64 rng(5);
  const std::size_t n = 4;
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < k; ++i) support.push_back(i);
    const Mat rho = oracle::random_density(n, rng);
    const auto thetas = default_theta_grid(k);
    ASSERT_EQ(thetas.size(), k + 1);
    std::vector<double> products;
    for (double th : thetas) {
      const Mat single = std::cos(th) * oracle::letter_matrix('Z') +
                         std::sin(th) * oracle::letter_matrix('X');
      products.push_back(oracle::expect(rho, oracle::product_on(n, support, single)));
    }
    const auto solved = solve_symmetric_expectations(k, thetas, products);
    const auto set = symmetric_operators(n, support);
    for (std::size_t a = 0; a <= k; ++a) {
      double direct = 0.0;
      for (const auto& p : set.terms_by_alpha[a]) direct += oracle::expect(rho, oracle::pauli_matrix(p));
      EXPECT_NEAR(solved[a], direct, 1e-8) << "k=" << k << " alpha=" << a;
    }
    // The weights for one alpha give the same answer as a dot product.
    const auto w = symmetric_estimator_weights(k, thetas, k - 1);
    double dot = 0.0;
    for (std::size_t j = 0; j <= k; ++j) dot += w[j] * products[j];
    EXPECT_NEAR(dot, solved[k - 1], 1e-9);
  }
}

TEST(SolveSymmetricExpectations, RejectsDegenerateAngles) {
  const std::vector<double> same{0.3, 0.3};
  const std::vector<double> products{0.0, 0.0};
  EXPECT_THROW(solve_symmetric_expectations(1, same, products), ArgumentError);
  EXPECT_THROW(solve_symmetric_expectations(2, same, products), DimensionError);
}

TEST(AnticommutingPairBound, Examples) {
  EXPECT_TRUE(anticommuting_pair_within_bound(1.0, 0.0));
  EXPECT_FALSE(anticommuting_pair_within_bound(0.8, 0.8));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> phi(0.0, 2 * std::numbers::pi);
  for (int i = 0; i < 100; ++i) {
    const double f = phi(rng);
    EXPECT_TRUE(anticommuting_pair_within_bound(std::cos(f), std::sin(f)));
  }
  EXPECT_THROW(anticommuting_pair_within_bound(1.5, 0.0), ArgumentError);
}

TEST(AnticommutingPairBound, HoldsOnRandomDensityMatrices) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Mat rho = oracle::random_density(n, rng);
    PauliString a = oracle::random_pauli(n, rng, false), b = oracle::random_pauli(n, rng, false);
    if (!anticommutes(a, b)) continue;
    EXPECT_TRUE(anticommuting_pair_within_bound(oracle::expect(rho, oracle::pauli_matrix(a)),
                                                oracle::expect(rho, oracle::pauli_matrix(b))));
  }
}

TEST(MeasurementDirection, NormalizationAndPresets) {
  const auto d = MeasurementDirection::in_xz_plane(std::numbers::pi / 2);
  EXPECT_NEAR(d.nx(), 1.0, 1e-15);
  EXPECT_NEAR(d.nz(), 0.0, 1e-15);
  EXPECT_EQ(MeasurementDirection::along(Axis::Y).ny(), 1.0);
  EXPECT_THROW(MeasurementDirection(1.0, 1.0, 0.0), ArgumentError);
  const MeasurementDirection almost(1.0 + 1e-10, 0.0, 0.0);
  EXPECT_NEAR(almost.nx(), 1.0, 1e-15);
}

}  // namespace
}  // namespace unicert

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
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace unicert {

enum class Axis : std::uint8_t { X, Y, Z };

char axis_letter(Axis axis);

/// Signed, Hermitian N-qubit Pauli operator in symplectic form.
///
/// Qubit q carries the letter X when only x(q) is set, Z when only z(q) is
/// set and Y when both are set. The represented operator is
/// sign * (letter_0 (x) letter_1 (x) ... ), so it always has eigenvalues +-1.
/// Qubits are zero-based in the API; text form lists qubit 0 first.
class PauliString {
 public:
  PauliString() = default;

  /// Identity on `num_qubits` qubits.
  explicit PauliString(std::size_t num_qubits);

  PauliString(std::vector<std::uint8_t> x_bits, std::vector<std::uint8_t> z_bits,
              int sign = 1);

  /// Parses "+XIZ", "-ZZX" or an unsigned "XYZ". Throws ParseError.
  static PauliString parse(std::string_view text);

  static PauliString single(std::size_t num_qubits, std::size_t qubit,
                            Axis axis);

  std::size_t num_qubits() const noexcept { return xs_.size(); }
  bool x(std::size_t qubit) const { return xs_.at(qubit) != 0; }
  bool z(std::size_t qubit) const { return zs_.at(qubit) != 0; }
  int sign() const noexcept { return negative_ ? -1 : 1; }

  /// 'I', 'X', 'Y' or 'Z'.
  char letter(std::size_t qubit) const;
  void set_letter(std::size_t qubit, char letter);
  void set_sign(int sign);

  std::size_t weight() const;
  std::vector<std::size_t> support() const;
  bool is_identity() const;  // ignores the sign

  /// Signed text form, e.g. "+XIZ".
  std::string str() const;

  /// Bit masks with qubit 0 as the most significant of `num_qubits` bits,
  /// matching the StateVector index convention. Requires num_qubits <= 64.
  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;

  const std::vector<std::uint8_t>& x_bits() const noexcept { return xs_; }
  const std::vector<std::uint8_t>& z_bits() const noexcept { return zs_; }

  PauliString operator-() const;

  /// Same letters, sign ignored.
  bool same_letters(const PauliString& other) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<std::uint8_t> xs_;
  std::vector<std::uint8_t> zs_;
  bool negative_ = false;
};

/// True iff the symplectic product sum_i (x1_i z2_i + x2_i z1_i) is odd.
bool anticommutes(const PauliString& a, const PauliString& b);
inline bool commutes(const PauliString& a, const PauliString& b) {
  return !anticommutes(a, b);
}

/// Product a*b of two commuting strings (the result is again Hermitian).
/// Throws ArgumentError if they anticommute.
PauliString multiply_commuting(const PauliString& a, const PauliString& b);

struct PauliTerm {
  double coefficient = 1.0;
  PauliString pauli;
};

/// Real linear combination of Pauli strings on a common register.
using PauliSum = std::vector<PauliTerm>;

std::string to_string(const PauliSum& sum);

/// Ordered pair of distinct axes. `first` is the letter counted by alpha.
struct AxisPair {
  Axis first = Axis::Z;
  Axis second = Axis::X;
};

/// All strings with `alpha` letters of `axes.first` and |I|-alpha letters of
/// `axes.second` on the support I, grouped by alpha.
struct SymmetricOperatorSet {
  std::size_t num_qubits = 0;
  std::vector<std::size_t> support;
  AxisPair axes;
  std::vector<std::vector<PauliString>> terms_by_alpha;
};

SymmetricOperatorSet symmetric_operators(std::size_t num_qubits,
                                         std::vector<std::size_t> support,
                                         AxisPair axes = {});

/// Number of independent symmetric operators reachable by uniform
/// measurements along x, y and z: sum_k C(N,k) C(k+2,2). Valid for
/// 1 <= N <= 55 (the result must fit in 64 bits).
std::uint64_t count_independent_operators(std::size_t num_qubits);

struct DecompositionTerm {
  double coefficient = 0.0;
  std::size_t alpha = 0;
};

/// Weights cos^alpha(theta) sin^(k-alpha)(theta) that expand the uniform
/// product expectation <prod_{i in I} (cos theta A_i + sin theta B_i)> into
/// the symmetric sums E(alpha; I). Ordered by alpha from k down to 0.
/// The weights do not depend on which axis pair is symmetrized.
std::vector<DecompositionTerm> uniform_expectation_decomposition(
    std::size_t support_size, double theta);

/// theta_j = pi (j + 1/2) / (k + 1), j = 0..k.
std::vector<double> default_theta_grid(std::size_t support_size);

/// Inverts the decomposition: given product expectations measured at k+1
/// distinct angles, returns E(alpha; I) for alpha = 0..k.
std::vector<double> solve_symmetric_expectations(
    std::size_t support_size, std::span<const double> thetas,
    std::span<const double> product_expectations);

/// Linear weights w_j such that E(alpha; I) = sum_j w_j * product(theta_j).
std::vector<double> symmetric_estimator_weights(std::size_t support_size,
                                                std::span<const double> thetas,
                                                std::size_t alpha);

/// e1^2 + e2^2 <= 1 + 1e-9, the constraint satisfied by expectations of two
/// anticommuting Pauli strings. Throws ArgumentError for |e| > 1 + 1e-9.
bool anticommuting_pair_within_bound(double e1, double e2);

/// Unit Bloch vector of a uniform measurement.
class MeasurementDirection {
 public:
  /// Normalizes (nx, ny, nz); throws ArgumentError if its norm is off by
  /// more than 1e-9.
  MeasurementDirection(double nx, double ny, double nz);

  /// (sin theta, 0, cos theta): theta = 0 is z, theta = pi/2 is x.
  static MeasurementDirection in_xz_plane(double theta);
  static MeasurementDirection along(Axis axis);

  double nx() const noexcept { return v_[0]; }
  double ny() const noexcept { return v_[1]; }
  double nz() const noexcept { return v_[2]; }
  const std::array<double, 3>& vector() const noexcept { return v_; }

  friend bool operator==(const MeasurementDirection&,
                         const MeasurementDirection&) = default;

 private:
  std::array<double, 3> v_;
};

}  // namespace unicert

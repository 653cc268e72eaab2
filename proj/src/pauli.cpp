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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "unicert/errors.hpp"

namespace unicert {

char axis_letter(Axis axis) {
  switch (axis) {
    case Axis::X:
      return 'X';
    case Axis::Y:
      return 'Y';
    case Axis::Z:
      return 'Z';
  }
  return '?';
}

PauliString::PauliString(std::size_t num_qubits)
    : xs_(num_qubits, 0), zs_(num_qubits, 0) {}

PauliString::PauliString(std::vector<std::uint8_t> x_bits,
                         std::vector<std::uint8_t> z_bits, int sign)
    : xs_(std::move(x_bits)), zs_(std::move(z_bits)) {
  if (xs_.size() != zs_.size()) {
    throw DimensionError("x and z bit vectors differ in length");
  }
  for (auto& b : xs_) b = b ? 1 : 0;
  for (auto& b : zs_) b = b ? 1 : 0;
  set_sign(sign);
}

PauliString PauliString::parse(std::string_view text) {
  int sign = 1;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    sign = text.front() == '-' ? -1 : 1;
    text.remove_prefix(1);
  }
  if (text.empty()) {
    throw ParseError("empty Pauli string");
  }
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    const char c = text[q];
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z' && c != '_') {
      throw ParseError("bad Pauli letter '" + std::string(1, c) + "' in \"" +
                       std::string(text) + "\"");
    }
    p.set_letter(q, c == '_' ? 'I' : c);
  }
  p.set_sign(sign);
  return p;
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit,
                                Axis axis) {
  if (qubit >= num_qubits) {
    throw ArgumentError("qubit index out of range");
  }
  PauliString p(num_qubits);
  p.set_letter(qubit, axis_letter(axis));
  return p;
}

char PauliString::letter(std::size_t qubit) const {
  static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  return kLetters[xs_.at(qubit) | (zs_.at(qubit) << 1)];
}

void PauliString::set_letter(std::size_t qubit, char letter) {
  if (qubit >= xs_.size()) {
    throw ArgumentError("qubit index out of range");
  }
  switch (letter) {
    case 'I':
      xs_[qubit] = 0, zs_[qubit] = 0;
      break;
    case 'X':
      xs_[qubit] = 1, zs_[qubit] = 0;
      break;
    case 'Y':
      xs_[qubit] = 1, zs_[qubit] = 1;
      break;
    case 'Z':
      xs_[qubit] = 0, zs_[qubit] = 1;
      break;
    default:
      throw ArgumentError("bad Pauli letter");
  }
}

void PauliString::set_sign(int sign) {
  if (sign != 1 && sign != -1) {
    throw ArgumentError("Pauli sign must be +1 or -1");
  }
  negative_ = sign < 0;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t q = 0; q < xs_.size(); ++q) w += (xs_[q] | zs_[q]);
  return w;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < xs_.size(); ++q) {
    if (xs_[q] | zs_[q]) out.push_back(q);
  }
  return out;
}

bool PauliString::is_identity() const { return weight() == 0; }

std::string PauliString::str() const {
  std::string s(1, negative_ ? '-' : '+');
  for (std::size_t q = 0; q < xs_.size(); ++q) s.push_back(letter(q));
  return s;
}

namespace {

std::uint64_t pack_msb_first(const std::vector<std::uint8_t>& bits) {
  if (bits.size() > 64) {
    throw CapabilityError("bit masks need at most 64 qubits");
  }
  std::uint64_t m = 0;
  for (std::uint8_t b : bits) m = (m << 1) | b;
  return m;
}

// Exponent of i picked up by a single-qubit letter product, following the
// Aaronson-Gottesman convention: sigma(x1,z1) sigma(x2,z2) = i^g sigma(x1^x2,
// z1^z2) with sigma(1,1) = Y.
int phase_exponent(int x1, int z1, int x2, int z2) {
  if (x1 == 0 && z1 == 0) return 0;
  if (x1 == 1 && z1 == 1) return z2 - x2;
  if (x1 == 1 && z1 == 0) return z2 * (2 * x2 - 1);
  return x2 * (1 - 2 * z2);
}

}  // namespace

std::uint64_t PauliString::x_mask() const { return pack_msb_first(xs_); }
std::uint64_t PauliString::z_mask() const { return pack_msb_first(zs_); }

PauliString PauliString::operator-() const {
  PauliString p = *this;
  p.negative_ = !negative_;
  return p;
}

bool PauliString::same_letters(const PauliString& other) const {
  return xs_ == other.xs_ && zs_ == other.zs_;
}

bool anticommutes(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("Pauli strings act on different qubit counts");
  }
  const auto& ax = a.x_bits();
  const auto& az = a.z_bits();
  const auto& bx = b.x_bits();
  const auto& bz = b.z_bits();
  unsigned parity = 0;
  for (std::size_t q = 0; q < ax.size(); ++q) {
    parity ^= (ax[q] & bz[q]) ^ (bx[q] & az[q]);
  }
  return parity != 0;
}

PauliString multiply_commuting(const PauliString& a, const PauliString& b) {
  if (anticommutes(a, b)) {
    throw ArgumentError("product of anticommuting Pauli strings is not Hermitian");
  }
  const std::size_t n = a.num_qubits();
  std::vector<std::uint8_t> x(n), z(n);
  int exponent = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const int x1 = a.x_bits()[q], z1 = a.z_bits()[q];
    const int x2 = b.x_bits()[q], z2 = b.z_bits()[q];
    exponent += phase_exponent(x1, z1, x2, z2);
    x[q] = static_cast<std::uint8_t>(x1 ^ x2);
    z[q] = static_cast<std::uint8_t>(z1 ^ z2);
  }
  exponent = ((exponent % 4) + 4) % 4;
  // Commuting factors leave a real phase: i^0 or i^2.
  const int sign = a.sign() * b.sign() * (exponent == 2 ? -1 : 1);
  return PauliString(std::move(x), std::move(z), sign);
}

std::string to_string(const PauliSum& sum) {
  std::ostringstream os;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    if (i) os << " ";
    if (sum[i].coefficient != 1.0) os << sum[i].coefficient << "*";
    os << sum[i].pauli.str();
  }
  return os.str();
}

SymmetricOperatorSet symmetric_operators(std::size_t num_qubits,
                                         std::vector<std::size_t> support,
                                         AxisPair axes) {
  if (support.empty()) {
    throw ArgumentError("symmetric operators need a nonempty support");
  }
  if (axes.first == axes.second) {
    throw ArgumentError("axis pair must name two distinct axes");
  }
  std::sort(support.begin(), support.end());
  if (std::adjacent_find(support.begin(), support.end()) != support.end()) {
    throw ArgumentError("support contains a repeated qubit");
  }
  if (support.back() >= num_qubits) {
    throw ArgumentError("support index out of range");
  }
  const std::size_t k = support.size();
  if (k > 30) {
    throw CapabilityError("support too large to enumerate");
  }

  SymmetricOperatorSet out;
  out.num_qubits = num_qubits;
  out.support = support;
  out.axes = axes;
  out.terms_by_alpha.resize(k + 1);
  const char first = axis_letter(axes.first);
  const char second = axis_letter(axes.second);
  // Subsets J of the support in increasing bitmask order; bit j <-> support[j].
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    PauliString p(num_qubits);
    std::size_t alpha = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const bool in_j = (mask >> j) & 1u;
      alpha += in_j;
      p.set_letter(support[j], in_j ? first : second);
    }
    out.terms_by_alpha[alpha].push_back(std::move(p));
  }
  return out;
}

std::uint64_t count_independent_operators(std::size_t num_qubits) {
  if (num_qubits == 0) {
    throw ArgumentError("operator count needs N >= 1");
  }
  if (num_qubits > 55) {
    throw CapabilityError("operator count overflows 64 bits beyond N = 55");
  }
  using u128 = unsigned __int128;
  const u128 n = num_qubits;
  u128 total = 0;
  u128 binom = 1;  // C(N, k)
  for (u128 k = 1; k <= n; ++k) {
    binom = binom * (n - k + 1) / k;
    total += binom * ((k + 2) * (k + 1) / 2);
  }
  // Closed form 2^(N-3)(N^2+7N+8) - 1, scaled by 8 to stay integral.
  const u128 closed_times_8 = (u128{1} << num_qubits) * (n * n + 7 * n + 8);
  if (8 * (total + 1) != closed_times_8) {
    throw std::logic_error("operator count disagrees with closed form");
  }
  return static_cast<std::uint64_t>(total);
}

std::vector<DecompositionTerm> uniform_expectation_decomposition(
    std::size_t support_size, double theta) {
  if (support_size == 0) {
    throw ArgumentError("decomposition needs |I| >= 1");
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<DecompositionTerm> out;
  out.reserve(support_size + 1);
  for (std::size_t alpha = support_size + 1; alpha-- > 0;) {
    const double coeff = std::pow(c, static_cast<double>(alpha)) *
                         std::pow(s, static_cast<double>(support_size - alpha));
    out.push_back({coeff, alpha});
  }
  return out;
}

std::vector<double> default_theta_grid(std::size_t support_size) {
  std::vector<double> grid(support_size + 1);
  for (std::size_t j = 0; j <= support_size; ++j) {
    grid[j] = std::numbers::pi * (static_cast<double>(j) + 0.5) /
              static_cast<double>(support_size + 1);
  }
  return grid;
}

namespace {

Eigen::MatrixXd decomposition_matrix(std::size_t k,
                                     std::span<const double> thetas) {
  if (k == 0) {
    throw ArgumentError("decomposition needs |I| >= 1");
  }
  if (thetas.size() != k + 1) {
    throw DimensionError("need exactly |I|+1 angles");
  }
  Eigen::MatrixXd a(k + 1, k + 1);
  for (std::size_t j = 0; j <= k; ++j) {
    for (const auto& term : uniform_expectation_decomposition(k, thetas[j])) {
      a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(term.alpha)) =
          term.coefficient;
    }
  }
  return a;
}

Eigen::FullPivLU<Eigen::MatrixXd> checked_lu(const Eigen::MatrixXd& a) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) {
    throw ArgumentError("angles do not determine the symmetric sums");
  }
  return lu;
}

}  // namespace

std::vector<double> solve_symmetric_expectations(
    std::size_t support_size, std::span<const double> thetas,
    std::span<const double> product_expectations) {
  if (product_expectations.size() != support_size + 1) {
    throw DimensionError("need exactly |I|+1 measured products");
  }
  const auto lu = checked_lu(decomposition_matrix(support_size, thetas));
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(support_size + 1));
  for (std::size_t j = 0; j <= support_size; ++j) {
    rhs(static_cast<Eigen::Index>(j)) = product_expectations[j];
  }
  const Eigen::VectorXd e = lu.solve(rhs);
  return {e.data(), e.data() + e.size()};
}

std::vector<double> symmetric_estimator_weights(std::size_t support_size,
                                                std::span<const double> thetas,
                                                std::size_t alpha) {
  if (alpha > support_size) {
    throw ArgumentError("alpha exceeds |I|");
  }
  const auto lu = checked_lu(decomposition_matrix(support_size, thetas));
  const Eigen::MatrixXd inv = lu.inverse();
  const Eigen::VectorXd row = inv.row(static_cast<Eigen::Index>(alpha));
  return {row.data(), row.data() + row.size()};
}

bool anticommuting_pair_within_bound(double e1, double e2) {
  constexpr double kTol = 1e-9;
  if (!(std::abs(e1) <= 1.0 + kTol) || !(std::abs(e2) <= 1.0 + kTol)) {
    throw ArgumentError("Pauli expectation outside [-1, 1]");
  }
  return e1 * e1 + e2 * e2 <= 1.0 + kTol;
}

MeasurementDirection::MeasurementDirection(double nx, double ny, double nz) {
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  if (!(std::abs(norm - 1.0) <= 1e-9)) {
    throw ArgumentError("measurement direction must be a unit vector");
  }
  v_ = {nx / norm, ny / norm, nz / norm};
}

MeasurementDirection MeasurementDirection::in_xz_plane(double theta) {
  return {std::sin(theta), 0.0, std::cos(theta)};
}

MeasurementDirection MeasurementDirection::along(Axis axis) {
  switch (axis) {
    case Axis::X:
      return {1.0, 0.0, 0.0};
    case Axis::Y:
      return {0.0, 1.0, 0.0};
    case Axis::Z:
      break;
  }
  return {0.0, 0.0, 1.0};
}

}  // namespace unicert

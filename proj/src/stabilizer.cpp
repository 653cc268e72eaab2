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

#include "unicert/stabilizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>

#include "unicert/errors.hpp"

namespace unicert {

GraphSpec::GraphSpec(std::size_t num_vertices, std::vector<Edge> edges)
    : n_(num_vertices), adjacency_(num_vertices) {
  if (num_vertices == 0) {
    throw ArgumentError("graph needs at least one vertex");
  }
  for (auto& [u, v] : edges) {
    if (u >= n_ || v >= n_) {
      throw ArgumentError("edge endpoint out of range");
    }
    if (u == v) {
      throw ArgumentError("self-loop on vertex " + std::to_string(u + 1));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw ArgumentError("duplicate edge");
  }
  edges_ = std::move(edges);
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

GraphSpec GraphSpec::path(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return GraphSpec(n, std::move(edges));
}

GraphSpec GraphSpec::cycle(std::size_t n) {
  if (n < 3) throw ArgumentError("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return GraphSpec(n, std::move(edges));
}

GraphSpec GraphSpec::empty(std::size_t n) { return GraphSpec(n, {}); }

std::vector<std::size_t> GraphSpec::closed_neighborhood(std::size_t v) const {
  std::vector<std::size_t> out = neighbors(v);
  out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

bool GraphSpec::is_path() const {
  if (edges_.size() + 1 != n_) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i] != Edge{i, i + 1}) return false;
  }
  return true;
}

std::optional<EvenDegreeBipartition> find_even_degree_bipartition(
    const GraphSpec& graph, std::size_t* offending_vertex,
    std::string* reason) {
  const std::size_t n = graph.num_vertices();
  auto fail = [&](std::size_t v, const char* why) {
    if (offending_vertex) *offending_vertex = v;
    if (reason) *reason = why;
    return std::nullopt;
  };

  std::vector<int> colour(n, -1);
  EvenDegreeBipartition out;
  for (std::size_t root = 0; root < n; ++root) {
    if (colour[root] >= 0) continue;
    std::vector<std::size_t> members[2];
    std::deque<std::size_t> queue{root};
    colour[root] = 0;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      members[colour[v]].push_back(v);
      for (std::size_t u : graph.neighbors(v)) {
        if (colour[u] < 0) {
          colour[u] = 1 - colour[v];
          queue.push_back(u);
        } else if (colour[u] == colour[v]) {
          return fail(u, "graph is not bipartite (odd cycle)");
        }
      }
    }
    auto first_odd = [&](const std::vector<std::size_t>& side) {
      std::optional<std::size_t> odd;
      for (std::size_t v : side) {
        if (graph.degree(v) % 2 == 1 && (!odd || v < *odd)) odd = v;
      }
      return odd;
    };
    // The root is the smallest vertex of its component.
    int symmetry = 0;
    if (auto odd = first_odd(members[1])) {
      if (first_odd(members[0])) {
        return fail(*odd, "neither side of its component has only even degrees");
      }
      symmetry = 1;
    }
    for (std::size_t v : members[symmetry]) out.symmetry_side.push_back(v);
    for (std::size_t v : members[1 - symmetry]) out.even_side.push_back(v);
  }
  std::sort(out.symmetry_side.begin(), out.symmetry_side.end());
  std::sort(out.even_side.begin(), out.even_side.end());
  return out;
}

namespace {

bool symplectic_bit(const PauliString& p, std::size_t column) {
  const std::size_t n = p.num_qubits();
  return column < n ? p.x_bits()[column] != 0 : p.z_bits()[column - n] != 0;
}

}  // namespace

StabilizerTableau::StabilizerTableau(std::vector<PauliString> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty()) {
    throw ArgumentError("tableau needs at least one generator");
  }
  n_ = generators_.front().num_qubits();
  if (generators_.size() != n_) {
    throw ArgumentError("need exactly N generators for N qubits");
  }
  for (const auto& g : generators_) {
    if (g.num_qubits() != n_) {
      throw DimensionError("generators act on different qubit counts");
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (anticommutes(generators_[i], generators_[j])) {
        throw ArgumentError("generators " + std::to_string(i + 1) + " and " +
                            std::to_string(j + 1) + " anticommute");
      }
    }
  }

  // Reduced row echelon form over GF(2) with signs carried by the products.
  echelon_ = generators_;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 2 * n_ && rank < n_; ++col) {
    std::size_t pivot = rank;
    while (pivot < n_ && !symplectic_bit(echelon_[pivot], col)) ++pivot;
    if (pivot == n_) continue;
    std::swap(echelon_[rank], echelon_[pivot]);
    for (std::size_t r = 0; r < n_; ++r) {
      if (r != rank && symplectic_bit(echelon_[r], col)) {
        echelon_[r] = multiply_commuting(echelon_[r], echelon_[rank]);
      }
    }
    pivots_.push_back(col);
    ++rank;
  }
  if (rank < n_) {
    throw ArgumentError("generators are not independent");
  }
}

std::optional<PauliString> StabilizerTableau::find_in_group(
    const PauliString& p) const {
  if (p.num_qubits() != n_) {
    throw DimensionError("Pauli string and tableau differ in qubit count");
  }
  // The group is maximal abelian, so membership up to sign is commutation.
  for (const auto& g : generators_) {
    if (anticommutes(g, p)) return std::nullopt;
  }
  PauliString acc(n_);
  for (std::size_t r = 0; r < n_; ++r) {
    if (symplectic_bit(p, pivots_[r])) {
      acc = multiply_commuting(acc, echelon_[r]);
    }
  }
  if (!acc.same_letters(p)) {
    throw std::logic_error("stabilizer decomposition failed");
  }
  return acc;
}

int StabilizerTableau::expectation(const PauliString& p) const {
  const auto element = find_in_group(p);
  if (!element) return 0;
  return element->sign() * p.sign();
}

void StabilizerTableau::for_each_group_element(
    const std::function<void(const PauliString&)>& visit) const {
  if (n_ > 20) {
    throw CapabilityError("group enumeration is limited to N <= 20");
  }
  PauliString acc(n_);
  visit(acc);
  const std::uint64_t count = std::uint64_t{1} << n_;
  // Gray-code walk: each step toggles one generator.
  for (std::uint64_t i = 1; i < count; ++i) {
    const auto j = static_cast<std::size_t>(std::countr_zero(i));
    acc = multiply_commuting(acc, echelon_[j]);
    visit(acc);
  }
}

StabilizerTableau graph_state_tableau(const GraphSpec& graph) {
  const std::size_t n = graph.num_vertices();
  std::vector<PauliString> gens;
  gens.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    PauliString g(n);
    g.set_letter(v, 'X');
    for (std::size_t u : graph.neighbors(v)) g.set_letter(u, 'Z');
    gens.push_back(std::move(g));
  }
  return StabilizerTableau(std::move(gens));
}

const char* to_string(StateClass c) {
  switch (c) {
    case StateClass::Product:
      return "Product";
    case StateClass::CSS:
      return "CSS";
    case StateClass::BipartiteEvenDegreeGraph:
      return "BipartiteEvenDegreeGraph";
    case StateClass::GeneralStabilizer:
      return "GeneralStabilizer";
  }
  return "?";
}

namespace {

// Dimension of the subspace of the row space whose bits vanish on the
// `leading` half of the symplectic columns. Eliminating the leading half first
// leaves exactly those rows with their pivot in the trailing half.
std::size_t pure_subspace_dimension(const std::vector<PauliString>& rows,
                                    bool x_only) {
  const std::size_t n = rows.front().num_qubits();
  std::vector<std::vector<std::uint8_t>> m;
  for (const auto& r : rows) {
    std::vector<std::uint8_t> bits;
    const auto& lead = x_only ? r.z_bits() : r.x_bits();
    const auto& trail = x_only ? r.x_bits() : r.z_bits();
    bits.insert(bits.end(), lead.begin(), lead.end());
    bits.insert(bits.end(), trail.begin(), trail.end());
    m.push_back(std::move(bits));
  }
  std::size_t rank = 0;
  std::size_t trailing_pivots = 0;
  for (std::size_t col = 0; col < 2 * n && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && !m[pivot][col]) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != rank && m[r][col]) {
        for (std::size_t c = 0; c < 2 * n; ++c) m[r][c] ^= m[rank][c];
      }
    }
    if (col >= n) ++trailing_pivots;
    ++rank;
  }
  return trailing_pivots;
}

}  // namespace

StateClass classify(const StabilizerTableau& tableau,
                    const std::optional<GraphSpec>& graph) {
  const std::size_t n = tableau.num_qubits();

  bool product = true;
  for (std::size_t q = 0; q < n && product; ++q) {
    bool found = false;
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
      if (tableau.expectation(PauliString::single(n, q, a)) != 0) {
        found = true;
        break;
      }
    }
    product = found;
  }
  if (product) return StateClass::Product;

  const auto& gens = tableau.generators();
  if (pure_subspace_dimension(gens, true) + pure_subspace_dimension(gens, false) ==
      n) {
    return StateClass::CSS;
  }

  if (graph && graph->num_vertices() == n &&
      graph_state_tableau(*graph) == tableau &&
      find_even_degree_bipartition(*graph)) {
    return StateClass::BipartiteEvenDegreeGraph;
  }
  return StateClass::GeneralStabilizer;
}

double fidelity_with_stabilizer_state(
    const StabilizerTableau& tableau,
    const std::function<double(const PauliString&)>& oracle) {
  if (tableau.num_qubits() > 16) {
    throw CapabilityError("fidelity by group enumeration is limited to N <= 16");
  }
  double sum = 0.0;
  tableau.for_each_group_element(
      [&](const PauliString& p) { sum += oracle(p); });
  return std::ldexp(sum, -static_cast<int>(tableau.num_qubits()));
}

void conjugate_by_hadamard(PauliString& p, std::size_t qubit) {
  const char l = p.letter(qubit);
  if (l == 'X') p.set_letter(qubit, 'Z');
  if (l == 'Z') p.set_letter(qubit, 'X');
  if (l == 'Y') p.set_sign(-p.sign());
}

void conjugate_by_phase(PauliString& p, std::size_t qubit) {
  const char l = p.letter(qubit);
  if (l == 'X') p.set_letter(qubit, 'Y');
  if (l == 'Y') {
    p.set_letter(qubit, 'X');
    p.set_sign(-p.sign());
  }
}

void conjugate_by_cnot(PauliString& p, std::size_t control,
                       std::size_t target) {
  if (control == target) throw ArgumentError("CNOT needs distinct qubits");
  const int xc = p.x(control), zc = p.z(control);
  const int xt = p.x(target), zt = p.z(target);
  if (xc && zt && !(xt ^ zc)) p.set_sign(-p.sign());
  const int new_xt = xt ^ xc;
  const int new_zc = zc ^ zt;
  static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  p.set_letter(target, kLetters[new_xt | (zt << 1)]);
  p.set_letter(control, kLetters[xc | (new_zc << 1)]);
}

StabilizerTableau random_stabilizer_tableau(std::size_t num_qubits, Rng& rng,
                                            std::size_t gate_count) {
  if (num_qubits == 0) throw ArgumentError("need at least one qubit");
  if (gate_count == 0) gate_count = 4 * num_qubits * num_qubits + 8;
  std::vector<PauliString> gens;
  for (std::size_t q = 0; q < num_qubits; ++q) {
    gens.push_back(PauliString::single(num_qubits, q, Axis::Z));
  }
  for (std::size_t step = 0; step < gate_count; ++step) {
    const auto kind = rng() % (num_qubits > 1 ? 3 : 2);
    const std::size_t a = rng() % num_qubits;
    if (kind == 0) {
      for (auto& g : gens) conjugate_by_hadamard(g, a);
    } else if (kind == 1) {
      for (auto& g : gens) conjugate_by_phase(g, a);
    } else {
      std::size_t b = rng() % (num_qubits - 1);
      if (b >= a) ++b;
      for (auto& g : gens) conjugate_by_cnot(g, a, b);
    }
  }
  for (auto& g : gens) g.set_sign((rng() & 1) ? -1 : 1);
  return StabilizerTableau(std::move(gens));
}

}  // namespace unicert

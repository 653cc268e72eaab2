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

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unicert/pauli.hpp"
#include "unicert/random.hpp"

namespace unicert {

/// Simple undirected graph on vertices 0..n-1.
class GraphSpec {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  GraphSpec() = default;

  /// Edges are normalized to (min, max) and sorted. Self-loops, duplicates
  /// and out-of-range vertices throw ArgumentError.
  GraphSpec(std::size_t num_vertices, std::vector<Edge> edges);

  static GraphSpec path(std::size_t n);
  static GraphSpec cycle(std::size_t n);
  static GraphSpec empty(std::size_t n);

  std::size_t num_vertices() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const {
    return adjacency_.at(v);
  }
  std::size_t degree(std::size_t v) const { return adjacency_.at(v).size(); }

  /// v together with its neighbours, sorted.
  std::vector<std::size_t> closed_neighborhood(std::size_t v) const;

  /// True for the path 0-1-...-(n-1) with no other edges.
  bool is_path() const;

  friend bool operator==(const GraphSpec& a, const GraphSpec& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Two-colouring (even_side, symmetry_side) of a bipartite graph in which every
/// vertex of `even_side` has even degree. The product of X over
/// `symmetry_side` then stabilizes the graph state.
struct EvenDegreeBipartition {
  std::vector<std::size_t> even_side;
  std::vector<std::size_t> symmetry_side;
};

/// Finds such a bipartition, colouring each connected component so that the
/// class holding the component's smallest vertex is the symmetry side when
/// possible. On failure returns nullopt and, if requested, the offending
/// vertex and a reason.
std::optional<EvenDegreeBipartition> find_even_degree_bipartition(
    const GraphSpec& graph, std::size_t* offending_vertex = nullptr,
    std::string* reason = nullptr);

/// Pure stabilizer state given by N independent, pairwise commuting
/// generators; the state is their joint +1 eigenvector.
class StabilizerTableau {
 public:
  /// Validates commutation and independence (throws ArgumentError).
  explicit StabilizerTableau(std::vector<PauliString> generators);

  std::size_t num_qubits() const noexcept { return n_; }
  const std::vector<PauliString>& generators() const noexcept {
    return generators_;
  }

  /// <p> on the state: +1 or -1 if +-p is in the stabilizer group, else 0.
  int expectation(const PauliString& p) const;

  /// Signed group element equal to +-p, if any.
  std::optional<PauliString> find_in_group(const PauliString& p) const;

  /// Visits all 2^N signed group elements (identity included). Throws
  /// CapabilityError for N > 20.
  void for_each_group_element(
      const std::function<void(const PauliString&)>& visit) const;

  /// Reduced row-echelon generators; equal groups give equal results.
  const std::vector<PauliString>& canonical_generators() const noexcept {
    return echelon_;
  }

  friend bool operator==(const StabilizerTableau& a,
                         const StabilizerTableau& b) {
    return a.echelon_ == b.echelon_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<PauliString> generators_;
  std::vector<PauliString> echelon_;
  std::vector<std::size_t> pivots_;  // symplectic column: x_q = q, z_q = n + q
};

/// Generator v is X_v prod_{u ~ v} Z_u with sign +1.
StabilizerTableau graph_state_tableau(const GraphSpec& graph);

enum class StateClass { Product, CSS, BipartiteEvenDegreeGraph, GeneralStabilizer };

const char* to_string(StateClass c);

/// Structural class, checked in the order Product, CSS, bipartite even-degree
/// graph, general. The graph class is only reported when `graph` is given and
/// its graph state is the state of `tableau`.
StateClass classify(const StabilizerTableau& tableau,
                    const std::optional<GraphSpec>& graph = std::nullopt);

/// 2^-N sum over the signed stabilizer group of oracle(P). With oracle(P) =
/// tr(rho P) this is the fidelity <psi|rho|psi>. Throws CapabilityError for
/// N > 16.
double fidelity_with_stabilizer_state(
    const StabilizerTableau& tableau,
    const std::function<double(const PauliString&)>& oracle);

/// Clifford conjugation of a Pauli string, P -> U P U^dagger.
void conjugate_by_hadamard(PauliString& p, std::size_t qubit);
void conjugate_by_phase(PauliString& p, std::size_t qubit);
void conjugate_by_cnot(PauliString& p, std::size_t control, std::size_t target);

/// Stabilizer state reached from |0...0> by a random circuit of
/// `gate_count` H/S/CNOT gates (0 selects 4 N^2 + 8) with random generator
/// signs.
StabilizerTableau random_stabilizer_tableau(std::size_t num_qubits, Rng& rng,
                                            std::size_t gate_count = 0);

}  // namespace unicert

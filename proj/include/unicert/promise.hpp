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

// Identifying the even-N path graph state among stabilizer states from exact
// expectations in the uniform bases x, z, x+z and x-z.
//
// With 1-based qubits the conditions are
//   c1   = <Z1 X2> + <X1 Z2>                                   = 1
//   c2   = <Z_{N-1} X_N> + <X_{N-1} Z_N>                        = 1
//   c3_i = <X_{i-1} Z_i Z_{i+1}> + <Z_{i-1} X_i Z_{i+1}>
//          + <Z_{i-1} Z_i X_{i+1}>                             = 1, 2 <= i <= N-1
//   c4_i = <X_i X_{i+3}>                                       = 0, 1 <= i <= N-3
// c3 uses the three distinct single-X placements on (i-1, i, i+1).
//
// The strings of c1, c3 and c2 are arranged in lines (c1 first, then c3 by
// i, then c2). An assignment diagram gives each string the value 0 or 1 with
// exactly one 1 per line and no two anticommuting strings both 1.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "unicert/pauli.hpp"
#include "unicert/stabilizer.hpp"

namespace unicert {

struct PromiseConditionSet {
  std::size_t n = 0;
  int c1 = 0;
  int c2 = 0;
  std::vector<int> c3;  // c3[k] is c3_{k+2}
  std::vector<int> c4;  // c4[k] is c4_{k+1}
  static constexpr const char* kC3Interpretation =
      "c3 sums the three distinct single-X placements on (i-1, i, i+1)";

  bool all_hold() const;
};

/// The strings of line `line` (0 = c1, 1..N-2 = c3_{line+1}, N-1 = c2).
std::vector<PauliString> promise_line(std::size_t n, std::size_t line);

/// Exact conditions of a stabilizer state. Throws ArgumentError unless N is
/// even and >= 4.
PromiseConditionSet evaluate_conditions(const StabilizerTableau& tableau);

struct AssignmentDiagram {
  std::string label;               // "graph", "b" or "c"
  std::vector<std::size_t> choice; // index of the 1 in lines 0..N-2
  /// Indices of the c2 line strings compatible with the choice; the diagram
  /// satisfies c2 only when this is nonempty.
  std::vector<std::size_t> closing_choices;
  /// 0-based i with X_i X_{i+3} (up to sign) a product of two strings
  /// assigned 1, so that the state would have c4_{i+1} = +-1.
  std::vector<std::size_t> forced_xx;

  bool closes() const { return !closing_choices.empty(); }
};

/// Branches over line 0 and propagates through the c3 lines, keeping every
/// choice that commutes with all earlier ones. Returns the diagrams ordered
/// graph, b, c. Throws ArgumentError unless N is even and >= 4.
std::vector<AssignmentDiagram> classify_assignments(std::size_t n);

enum class PromiseVerdict { IsTargetGraphState, IsNot };
const char* to_string(PromiseVerdict v);

/// IsTargetGraphState iff c1 = c2 = 1, every c3 = 1 and every c4 = 0.
PromiseVerdict certify_under_promise(const StabilizerTableau& tableau);

/// Stabilizer state realizing the diagram: its strings assigned 1 (with the
/// first closing choice, if any) are +1 stabilizers, completed to N
/// generators by a weight-ordered search over commuting independent strings.
/// Dependent strings are dropped and then checked for sign consistency.
/// Returns nullopt if the strings conflict or no completion exists. Practical for N <= 10.
std::optional<StabilizerTableau> witness_tableau(const AssignmentDiagram& diagram,
                                                 std::size_t n);

}  // namespace unicert

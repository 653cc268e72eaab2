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

#include "unicert/promise.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>

#include "unicert/errors.hpp"

namespace unicert {
namespace {

void check_even(std::size_t n) {
  if (n < 4 || n % 2 != 0) {
    throw ArgumentError("the promise conditions need an even N >= 4");
  }
}

// Letters on consecutive qubits starting at `first`, identity elsewhere.
PauliString word(std::size_t n, std::size_t first, const char* letters) {
  PauliString p(n);
  for (std::size_t k = 0; letters[k] != '\0'; ++k) p.set_letter(first + k, letters[k]);
  return p;
}

int line_sum(const StabilizerTableau& t, const std::vector<PauliString>& line) {
  int s = 0;
  for (const auto& p : line) s += t.expectation(p);
  return s;
}

// Symplectic vector (x << n) | z of a Pauli string (n <= 32).
std::uint64_t symplectic(const PauliString& p) {
  return (p.x_mask() << p.num_qubits()) | p.z_mask();
}

bool symplectic_commute(std::uint64_t a, std::uint64_t b, std::size_t n) {
  const std::uint64_t low = (std::uint64_t{1} << n) - 1;
  const std::uint64_t ax = a >> n, az = a & low, bx = b >> n, bz = b & low;
  return (std::popcount((ax & bz) ^ (bx & az)) & 1) == 0;
}

// Incremental GF(2) basis keyed by leading bit.
class Gf2Basis {
 public:
  bool insert(std::uint64_t v) {
    for (std::uint64_t r : rows_) v = std::min(v, v ^ r);
    if (v == 0) return false;
    rows_.push_back(v);
    std::sort(rows_.begin(), rows_.end(), std::greater<>());
    return true;
  }

 private:
  std::vector<std::uint64_t> rows_;
};

PauliString from_symplectic(std::uint64_t v, std::size_t n) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) {
    const bool x = (v >> (2 * n - 1 - q)) & 1U;
    const bool z = (v >> (n - 1 - q)) & 1U;
    p.set_letter(q, x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I'));
  }
  return p;
}

}  // namespace

bool PromiseConditionSet::all_hold() const {
  if (c1 != 1 || c2 != 1) return false;
  for (int v : c3) {
    if (v != 1) return false;
  }
  for (int v : c4) {
    if (v != 0) return false;
  }
  return true;
}

std::vector<PauliString> promise_line(std::size_t n, std::size_t line) {
  check_even(n);
  if (line == 0) return {word(n, 0, "XZ"), word(n, 0, "ZX")};
  if (line == n - 1) return {word(n, n - 2, "XZ"), word(n, n - 2, "ZX")};
  if (line >= n) throw ArgumentError("promise line index out of range");
  const std::size_t first = line - 1;
  return {word(n, first, "XZZ"), word(n, first, "ZXZ"), word(n, first, "ZZX")};
}

PromiseConditionSet evaluate_conditions(const StabilizerTableau& tableau) {
  const std::size_t n = tableau.num_qubits();
  check_even(n);
  PromiseConditionSet c;
  c.n = n;
  c.c1 = line_sum(tableau, promise_line(n, 0));
  c.c2 = line_sum(tableau, promise_line(n, n - 1));
  for (std::size_t line = 1; line + 1 < n; ++line) {
    c.c3.push_back(line_sum(tableau, promise_line(n, line)));
  }
  for (std::size_t i = 0; i + 3 < n; ++i) {
    PauliString xx(n);
    xx.set_letter(i, 'X');
    xx.set_letter(i + 3, 'X');
    c.c4.push_back(tableau.expectation(xx));
  }
  return c;
}

std::vector<AssignmentDiagram> classify_assignments(std::size_t n) {
  check_even(n);
  std::vector<std::vector<PauliString>> lines;
  for (std::size_t line = 0; line < n; ++line) lines.push_back(promise_line(n, line));

  std::vector<AssignmentDiagram> found;
  std::vector<std::size_t> choice;
  std::vector<PauliString> chosen;
  std::function<void(std::size_t)> descend = [&](std::size_t line) {
    if (line + 1 == n) {
      AssignmentDiagram d;
      d.choice = choice;
      for (std::size_t k = 0; k < lines[line].size(); ++k) {
        const auto& cand = lines[line][k];
        if (std::all_of(chosen.begin(), chosen.end(),
                        [&](const PauliString& p) { return commutes(p, cand); })) {
          d.closing_choices.push_back(k);
        }
      }
      found.push_back(std::move(d));
      return;
    }
    for (std::size_t k = 0; k < lines[line].size(); ++k) {
      const auto& cand = lines[line][k];
      if (!std::all_of(chosen.begin(), chosen.end(),
                       [&](const PauliString& p) { return commutes(p, cand); })) {
        continue;
      }
      choice.push_back(k);
      chosen.push_back(cand);
      descend(line + 1);
      choice.pop_back();
      chosen.pop_back();
    }
  };
  descend(0);

  for (auto& d : found) {
    std::vector<PauliString> ones;
    for (std::size_t line = 0; line + 1 < n; ++line) ones.push_back(lines[line][d.choice[line]]);
    if (d.closes()) ones.push_back(lines[n - 1][d.closing_choices.front()]);
    for (std::size_t i = 0; i + 3 < n; ++i) {
      PauliString xx(n);
      xx.set_letter(i, 'X');
      xx.set_letter(i + 3, 'X');
      bool forced = false;
      for (std::size_t a = 0; a < ones.size() && !forced; ++a) {
        for (std::size_t b = a + 1; b < ones.size() && !forced; ++b) {
          forced = multiply_commuting(ones[a], ones[b]).same_letters(xx);
        }
      }
      if (forced) d.forced_xx.push_back(i);
    }
    const bool graph_like =
        d.choice[0] == 0 &&
        std::all_of(d.choice.begin() + 1, d.choice.end(),
                    [](std::size_t k) { return k == 1; });
    d.label = graph_like ? "graph" : (d.choice[0] == 1 ? "b" : "c");
  }
  const auto rank = [](const AssignmentDiagram& d) {
    return d.label == "graph" ? 0 : (d.label == "b" ? 1 : 2);
  };
  std::stable_sort(found.begin(), found.end(),
                   [&](const auto& a, const auto& b) { return rank(a) < rank(b); });
  return found;
}

const char* to_string(PromiseVerdict v) {
  return v == PromiseVerdict::IsTargetGraphState ? "IsTargetGraphState" : "IsNot";
}

PromiseVerdict certify_under_promise(const StabilizerTableau& tableau) {
  return evaluate_conditions(tableau).all_hold() ? PromiseVerdict::IsTargetGraphState
                                                 : PromiseVerdict::IsNot;
}

std::optional<StabilizerTableau> witness_tableau(const AssignmentDiagram& diagram,
                                                 std::size_t n) {
  check_even(n);
  if (n > 10) throw CapabilityError("witness search limited to N <= 10");
  if (diagram.choice.size() + 1 != n) {
    throw DimensionError("diagram does not match N");
  }
  std::vector<PauliString> gens;
  for (std::size_t line = 0; line + 1 < n; ++line) {
    gens.push_back(promise_line(n, line).at(diagram.choice[line]));
  }
  if (diagram.closes()) {
    gens.push_back(promise_line(n, n - 1).at(diagram.closing_choices.front()));
  }

  const std::vector<PauliString> assigned = gens;
  for (std::size_t a = 0; a < assigned.size(); ++a) {
    for (std::size_t b = a + 1; b < assigned.size(); ++b) {
      if (anticommutes(assigned[a], assigned[b])) return std::nullopt;
    }
  }
  // Strings in the span of earlier ones add nothing; their sign is checked
  // once the group is complete.
  Gf2Basis basis;
  std::vector<std::uint64_t> vecs;
  gens.clear();
  for (const auto& g : assigned) {
    const std::uint64_t v = symplectic(g);
    if (!basis.insert(v)) continue;
    vecs.push_back(v);
    gens.push_back(g);
  }

  if (gens.size() < n) {
    // Any commuting independent string extends an isotropic subspace, so a
    // greedy pass in weight order always completes it.
    std::vector<std::uint64_t> candidates;
    const std::uint64_t total = std::uint64_t{1} << (2 * n);
    for (std::uint64_t v = 1; v < total; ++v) candidates.push_back(v);
    const std::uint64_t low = (std::uint64_t{1} << n) - 1;
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](std::uint64_t a, std::uint64_t b) {
                       return std::popcount((a >> n) | (a & low)) <
                              std::popcount((b >> n) | (b & low));
                     });
    for (std::uint64_t v : candidates) {
      if (gens.size() == n) break;
      if (!std::all_of(vecs.begin(), vecs.end(), [&](std::uint64_t w) {
            return symplectic_commute(v, w, n);
          })) {
        continue;
      }
      if (!basis.insert(v)) continue;
      vecs.push_back(v);
      gens.push_back(from_symplectic(v, n));
    }
  }
  if (gens.size() != n) return std::nullopt;
  StabilizerTableau t(std::move(gens));
  for (const auto& g : assigned) {
    if (t.expectation(g) != 1) return std::nullopt;
  }
  return t;
}

}  // namespace unicert

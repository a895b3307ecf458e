#pragma once

#include <map>
#include <string>
#include <vector>

#include "selfsim/digits.hpp"

namespace selfsim {

struct Edge {
  int from;
  DigitTuple digits;
  int to;
};

// Nondeterministic safety automaton over the (k, d) digit alphabet. Every
// state is accepting; the finite-prefix language is prefix-closed and the
// infinite paths name the points of a compact subset of [0,1]^d. States are
// 0..n-1; transitions are stored per state as symbol code -> sorted targets.
class SetAutomaton {
 public:
  SetAutomaton(int k, int d, int state_count, std::vector<int> initial, const std::vector<Edge>& edges);

  int k() const { return k_; }
  int d() const { return d_; }
  int state_count() const { return static_cast<int>(delta_.size()); }
  const std::vector<int>& initial() const { return initial_; }
  const std::map<int, std::vector<int>>& transitions_from(int state) const {
    return delta_[static_cast<size_t>(state)];
  }
  std::vector<Edge> edges() const;  // sorted by (from, digits, to)

  bool is_trim() const;

  // single state looping on the given digit tuples (the common IFS-like case)
  static SetAutomaton single_state(int k, int d, const std::vector<DigitTuple>& loops);

 private:
  int k_;
  int d_;
  std::vector<int> initial_;
  std::vector<std::map<int, std::vector<int>>> delta_;
};

// Deterministic variant: one initial state, at most one successor per
// (state, symbol). Same safety semantics.
class DeterministicAutomaton {
 public:
  DeterministicAutomaton(int k, int d, int state_count, int initial,
                         std::vector<std::map<int, int>> delta);

  int k() const { return k_; }
  int d() const { return d_; }
  int state_count() const { return static_cast<int>(delta_.size()); }
  int initial() const { return initial_; }
  const std::map<int, int>& transitions_from(int state) const {
    return delta_[static_cast<size_t>(state)];
  }
  // -1 when undefined
  int next(int state, int symbol) const;

  SetAutomaton to_set_automaton() const;

 private:
  int k_;
  int d_;
  int initial_;
  std::vector<std::map<int, int>> delta_;
};

// Maximal sub-automaton whose states are reachable from an initial state and
// carry an infinite path. Throws EmptySet when nothing survives. When
// old_to_new is given it receives the state renumbering (-1 = removed).
SetAutomaton trim(const SetAutomaton& a, std::vector<int>* old_to_new = nullptr);
DeterministicAutomaton trim(const DeterministicAutomaton& a);

// Subset construction; preserves the finite-prefix language exactly. The
// result is trim because every input state is live.
DeterministicAutomaton determinize(const SetAutomaton& a);

// Unique minimal automaton with the same prefix language, renumbered into
// canonical breadth-first order (digits ascending), so that language-equal
// inputs minimize to byte-identical serializations.
DeterministicAutomaton minimize(const DeterministicAutomaton& a);

// Canonical byte serialization of a deterministic automaton as-is (states
// must already be in canonical order for cross-automaton comparisons).
std::string canonical_key(const DeterministicAutomaton& a);

// Prefix-language equality, decided via minimization. BaseMismatch if the
// two automata disagree on (k, d).
bool language_equal(const DeterministicAutomaton& a, const DeterministicAutomaton& b);

// JSON wire format: {k, d, states:[...], initial:[...],
// edges:[{from, digits:[...], to}]}, canonical form sorted lexicographically.
std::string to_json(const SetAutomaton& a, int indent = -1);
SetAutomaton set_automaton_from_json(const std::string& text);

// Sub-automaton of a deterministic automaton rooted at `root` (the digit
// quotient machinery), restricted to reachable states and BFS-renumbered.
DeterministicAutomaton rooted_subautomaton(const DeterministicAutomaton& a, int root);

}  // namespace selfsim

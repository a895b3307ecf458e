#pragma once

#include <map>
#include <string>
#include <vector>

#include "selfsim/automaton.hpp"
#include "selfsim/saturate.hpp"

namespace selfsim {

// Finite k-kernel of a saturated automaton: element 0 is the set itself, the
// other elements are the distinct digit-quotients, stored as canonical
// minimized automata. table maps (element, symbol) to the quotient element;
// an absent key means the quotient is empty. matrix[i][j] counts the digits b
// with table[j][b] == i (the number of 1/k-scale copies of X_i inside X_j).
struct KernelPresentation {
  int k = 0;
  int d = 0;
  std::vector<DeterministicAutomaton> elements;
  std::vector<std::string> labels;
  std::vector<std::map<int, int>> table;
  std::vector<std::vector<long long>> matrix;

  int size() const { return static_cast<int>(elements.size()); }
  // -1 when the quotient is empty
  int transition(int element, const DigitTuple& digit) const;
};

struct KernelOptions {
  long long element_cap = 10000;  // KernelOverflow beyond this
};

// Breadth-first closure over digit quotients, deduplicated by canonical
// serialization; discovery order with digits ascending, the set itself first.
KernelPresentation compute_kernel(const SaturatedAutomaton& a, const KernelOptions& opts = {});

// Recomputes A from the transition table (kp.matrix holds the same data).
std::vector<std::vector<long long>> subdivision_matrix(const KernelPresentation& kp);

// Base change k -> k^e by grouping e consecutive digits into one super-digit
// (big-endian positional combination per coordinate); names the same set.
SetAutomaton rebase_raw(const SetAutomaton& a, int exponent);
SaturatedAutomaton rebase(const SaturatedAutomaton& a, int exponent);

// Quotient of one kernel element by one digit, recomputed from scratch (the
// closure re-verification path); empty quotient reported via EmptySet.
DeterministicAutomaton digit_quotient(const DeterministicAutomaton& element, const DigitTuple& digit);

std::string to_json(const KernelPresentation& kp, int indent = -1);
KernelPresentation kernel_from_json(const std::string& text);

}  // namespace selfsim

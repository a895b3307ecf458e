#pragma once

#include "selfsim/automaton.hpp"

namespace selfsim {

// Letter-to-letter transducer recognizing exactly the pairs (u, v) of digit
// streams that represent the same point of [0,1]^d under the 0.d1d2...
// convention. Per coordinate the status is EQUAL until the streams split by
// one at some position; after that the left stream must read k-1 forever and
// the right one 0 (LEFT_LOW), or the mirror image (LEFT_HIGH). The full state
// is the product over coordinates, at most 3^d states, state 0 = all-EQUAL.
class CarryTransducer {
 public:
  enum Status : int { kEqual = 0, kLeftLow = 1, kLeftHigh = 2 };

  CarryTransducer(int k, int d);

  int k() const { return k_; }
  int d() const { return d_; }
  int state_count() const;  // 3^d
  int start() const { return 0; }

  // successor status, or -1 when the coordinate pair is not allowed
  static int step_coord(int status, int k, int u, int v);

  // all (v_code, next_state) pairs readable from `state` on input letter u
  std::vector<std::pair<int, int>> outputs(int state, int u_code) const;

  // does some run carry the full pair (u, v)? exposed for direct testing
  bool accepts_pair(const std::vector<DigitTuple>& u, const std::vector<DigitTuple>& v) const;

 private:
  int k_;
  int d_;
};

CarryTransducer carry_transducer(int k, int d);

// A SetAutomaton carrying a saturation certificate: its omega-language is
// closed under alternate k-adic representations, so its finite prefixes are
// exactly the digit words whose closed cube meets the named set.
class SaturatedAutomaton {
 public:
  explicit SaturatedAutomaton(SetAutomaton a) : a_(std::move(a)) {}
  const SetAutomaton& automaton() const { return a_; }

 private:
  SetAutomaton a_;
};

// Transducer-image composition followed by trim: the result names the same
// compact set but accepts every expansion of every point. State budget guards
// the product construction (default 1e5 product states).
SaturatedAutomaton saturate(const SetAutomaton& a, long long state_budget = 100000);

bool is_saturated(const SetAutomaton& a);

}  // namespace selfsim

#pragma once

#include <string>
#include <vector>

#include "selfsim/automaton.hpp"

namespace selfsim {

// Surface syntax AST for .kss digit-system files.
//
//   spec    := header item* ;
//   header  := "base" INT "dim" INT ;
//   item    := "state" IDENT ["initial"]
//            | "edge" IDENT "-(" INT ("," INT)* ")->" IDENT
//            | "allow" "(" INT ("," INT)* ")" ;
//
// "#" comments to end of line; whitespace-insensitive. "allow" is sugar for a
// single implicit initial state with self-loops and cannot be mixed with
// explicit states.
struct SpecItem {
  enum class Kind { State, Edge, Allow };
  Kind kind;
  std::string name;         // State: declared name
  bool initial = false;     // State: marked initial
  std::string from, to;     // Edge endpoints
  std::vector<int> digits;  // Edge/Allow label
  SourcePos pos;
};

struct DigitSystemSpec {
  int k = 0;
  int d = 0;
  std::string name;  // optional label, not part of the grammar
  std::vector<SpecItem> declarations;
};

DigitSystemSpec parse_spec(const std::string& text);

// Canonical textual form; parse_spec(print_spec(s)) round-trips byte-exactly
// on canonical output.
std::string print_spec(const DigitSystemSpec& spec);

// Builds the trim SetAutomaton. A declared state removed by trimming is an
// error (DeadState), not a silent repair; EmptySet when nothing survives.
SetAutomaton validate(const DigitSystemSpec& spec);

}  // namespace selfsim

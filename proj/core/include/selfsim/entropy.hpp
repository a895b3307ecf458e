#pragma once

#include <string>
#include <vector>

#include "selfsim/kernel.hpp"
#include "selfsim/numeric.hpp"
#include "selfsim/spectral.hpp"

namespace selfsim {

// Determinization of the kernel automaton with every element initial: a word
// labels a path from the start subset iff its cube meets some kernel element,
// so length-p path counts are exactly the language word counts.
struct CountingAutomaton {
  int k = 0;
  int d = 0;
  int start = 0;
  std::vector<std::vector<int>> subsets;   // element-index sets per state
  std::vector<std::map<int, int>> delta;   // symbol -> state
  IntMatrix transfer;                      // transfer[s][t] = #symbols s -> t
};

CountingAutomaton counting_automaton(const KernelPresentation& kp);

// J^T A^p e_i: the number of level-p closed grid cubes meeting element i.
BigInt cube_count(const KernelPresentation& kp, int element, int p);

// Exact number of distinct length-p words in the language (factors of the
// digit expansions of points of the set).
BigInt word_count(const KernelPresentation& kp, int p);
BigInt word_count(const CountingAutomaton& ca, int p);

// Count of length-p prefixes accepted by a deterministic automaton (one path
// per word), used for raw-vs-saturated diagnostics.
BigInt prefix_count(const DeterministicAutomaton& a, int p);

struct CountReport {
  int p = 0;
  BigInt total;
  std::vector<BigInt> per_element;
  double estimator = 0;  // ratio estimator log_k(P(p+1)/P(p))
};

CountReport count_report(const KernelPresentation& kp, int p);

struct EstimatePair {
  double direct = 0;  // (1/p) log_k P(p)
  double ratio = 0;   // log_k(P(p+1)/P(p))
};

EstimatePair entropy_estimate(const KernelPresentation& kp, int p);

// Proposition-2 value: log_k of the certified rho(A) enclosure.
LogEnclosure entropy(const KernelPresentation& kp, const Rat& tol);

// Theorem-1 check through two code paths: dimension from spectral on A,
// entropy from spectral on the counting automaton's transfer matrix. The
// enclosures must intersect (tested exactly on the rho intervals) and the
// finite-depth sandwich must hold.
struct TheoremReport {
  LogEnclosure dim;          // via A
  LogEnclosure ent_transfer; // via the counting automaton
  bool enclosures_intersect = false;
  bool sandwich_ok = false;
  int sandwich_depth = 0;
  EstimatePair estimate;     // finite-depth diagnostic at sandwich_depth
  std::string violated;      // empty when pass
  bool pass = false;
};

TheoremReport verify_theorem(const KernelPresentation& kp, const Rat& tol, int diagnostic_depth = 10);

std::string to_json(const TheoremReport& r, int indent = -1);

}  // namespace selfsim

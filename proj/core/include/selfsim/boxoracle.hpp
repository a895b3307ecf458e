#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "selfsim/digits.hpp"
#include "selfsim/numeric.hpp"

namespace selfsim {

// A set given directly by its contraction branches x -> (x + b)/k. The
// attractor is the unique nonempty compact fixed set of the branch union.
struct GeometricSet {
  std::string name;
  int k = 0;
  int d = 0;
  std::vector<DigitTuple> branches;
};

// cantor | singleton-zero | cantor-square | sierpinski-carpet | vicsek |
// full-cube-K-D (e.g. "full-cube-2-1"). UnknownSet otherwise.
GeometricSet builtin_set(const std::string& name);
std::vector<std::string> builtin_names();

struct BoxCount {
  int p = 0;
  BigInt count;
};

// Exact closed-cube box counting by recursion on rational rectangles,
// entirely independent of the automaton pipeline. A closed box R meets the
// attractor iff some branch preimage of R, clipped to the unit cube, meets
// it; on the finite graph of reachable boxes that is "an infinite chain of
// nonempty boxes exists", decided by depth-first search where reaching a box
// already on the stack closes such a chain. All coordinates are integers
// scaled by k^level, reduced for memoization.
class BoxOracle {
 public:
  explicit BoxOracle(GeometricSet set);

  const GeometricSet& set() const { return set_; }

  BoxCount count_boxes(int p, long long budget = 10000000);

  // does the closed box (coordinates scaled by k^level) meet the attractor?
  bool meets(const std::vector<long long>& lo, const std::vector<long long>& hi, int level);

 private:
  struct Box {
    // reduced: coordinates scaled by `den` (a power of k), clipped to [0,den]
    long long den;
    std::vector<std::pair<long long, long long>> c;
    bool operator==(const Box&) const = default;
  };
  struct BoxHash {
    size_t operator()(const Box& b) const;
  };

  Box reduce(long long den, std::vector<std::pair<long long, long long>> c) const;
  bool meets_box(const Box& b);
  BigInt count_rec(std::vector<long long>& pos, int level, int p, long long budget, long long& used);

  GeometricSet set_;
  std::unordered_map<Box, int, BoxHash> memo_;  // 0 = false, 1 = true, 2 = on stack
};

struct BoxEstimate {
  double direct = 0;  // log_k(N_p)/p
  double ratio = 0;   // log_k(N_{p+1}/N_p)
};

BoxEstimate box_dimension_estimate(BoxOracle& oracle, int p, long long budget = 10000000);

// JSON manifest of the built-in corpus (name, k, d, branch digits).
std::string corpus_manifest_json(int indent = 2);

}  // namespace selfsim

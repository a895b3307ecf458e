#pragma once

#include <string>
#include <vector>

#include "selfsim/kernel.hpp"
#include "selfsim/numeric.hpp"
#include "selfsim/spectral.hpp"

namespace selfsim {

// Similarity x -> ratio * x + translation, exact rational coefficients.
struct SimilarityMap {
  Rat ratio;
  std::vector<Rat> translation;

  std::vector<Rat> apply(const std::vector<Rat>& x) const;
};

struct RatBox {
  std::vector<Rat> lo, hi;
  bool operator==(const RatBox&) const = default;
  bool operator<(const RatBox& other) const;
};

// One vertex (h, i, j): the h-th 1/k-scale copy of element i inside element
// j, bound to the digit realizing it (h counts digits in lexicographic
// order). The seed cube sits in the container block at offset (2j, 0, ...).
struct GgdcVertex {
  int h;  // 1-based
  int i;
  int j;
  DigitTuple digit;
  RatBox seed;
};

struct GgdcGraph {
  int k = 0;
  int d = 0;
  int n = 0;  // kernel element count
  std::vector<GgdcVertex> vertices;
  std::vector<SimilarityMap> maps;            // per source vertex (target-independent)
  std::vector<std::vector<int>> out_edges;    // (h,i,j) -> every (r,s,t) with t == i

  long long edge_count() const;
  std::string label(int v) const;             // 1-based "hij" display form
};

GgdcGraph build_ggdc(const KernelPresentation& kp);

// Mauldin-Williams axioms checked with exact rational arithmetic; returns
// structured violations instead of throwing.
struct GgdcValidation {
  bool pass = true;
  std::vector<std::string> violations;
};

GgdcValidation validate_ggdc(const GgdcGraph& g);

// All ratios are 1/k, so the Moran-type equation (1/k^beta) rho = 1 gives
// beta = log_k rho of the unweighted adjacency matrix.
LogEnclosure ggdc_dimension(const GgdcGraph& g, const Rat& tol);

// p-th construction level: the compositions T_sigma(J_sigma(p)) over all
// length-p vertex paths, deduplicated exact rational cubes of side 1/k^(p+1).
std::vector<RatBox> level_sets(const GgdcGraph& g, int p, long long cube_budget = 1000000);

std::string to_dot(const GgdcGraph& g);
std::string to_json(const GgdcGraph& g, int indent = -1);

}  // namespace selfsim

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selfsim/kernel.hpp"

namespace selfsim {

// Level-p grid positions of the cubes meeting one kernel element; positions
// are integer d-tuples in [0, k^p)^d, sorted lexicographically, no duplicates.
struct CubeList {
  int k = 0;
  int d = 0;
  int p = 0;
  std::vector<std::vector<long long>> positions;
};

// Enumerates the length-p words from element i; cardinality always equals
// cube_count(kp, i, p). BudgetExceeded when that count is over budget.
CubeList level_approximation(const KernelPresentation& kp, int element, int p,
                             long long budget = 1000000);

struct RenderOptions {
  int canvas = 1024;  // square viewBox edge in user units
  // for d >= 3: fix d-2 coordinates (axis, grid position at level p)
  std::vector<std::pair<int, long long>> slice;
};

// Deterministic SVG: bars for d=1, filled rectangles for d=2; byte-identical
// across runs for equal inputs. UnsupportedDimension for d >= 3 without a
// slice fixing all but two axes.
std::string render_svg(const CubeList& cubes, const RenderOptions& options = {});

// Binary PGM (P5, maxval 255, values {0,255}); pixel dark iff its cell lies
// in a listed cube. d must be 2 and resolution a multiple of k^p.
std::string render_pgm(const CubeList& cubes, int resolution);

}  // namespace selfsim

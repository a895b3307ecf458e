#pragma once

#include <string>
#include <vector>

#include "selfsim/kernel.hpp"
#include "selfsim/numeric.hpp"

namespace selfsim {

using IntMatrix = std::vector<std::vector<long long>>;

// Strongly connected components of the digraph with an edge j -> i whenever
// A[i][j] > 0, ordered by smallest member, plus the condensation edges.
struct Condensation {
  std::vector<std::vector<int>> components;
  std::vector<std::pair<int, int>> dag;  // (from component, to component)
  std::vector<int> component_of;
};

Condensation scc_decompose(const IntMatrix& a);

// Certified enclosure of the spectral radius. lower/upper are exact
// rationals with upper - lower <= tol when certified; scc_witness is a
// strongly connected component attaining the maximum.
struct SpectralResult {
  Rat lower;
  Rat upper;
  double value = 0;
  std::vector<int> scc_witness;
  long long iterations = 0;
  bool certified = false;

  Rat width() const { return upper - lower; }
};

// Per-SCC Collatz-Wielandt iteration on B + I (the identity shift makes
// irreducible components primitive), exact integer vectors with gcd
// renormalization, bounds kept as best-so-far rationals. All-zero components
// short-circuit to [0,0].
SpectralResult spectral_radius(const IntMatrix& a, const Rat& tol,
                               long long iteration_cap = 1000000);

// log_k of a certified rho enclosure, interval-evaluated and clamped to [0,d].
struct LogEnclosure {
  int base = 0;
  SpectralResult rho;
  double value = 0;  // midpoint
  double lower = 0;
  double upper = 0;
};

LogEnclosure dimension(const KernelPresentation& kp, const Rat& tol);

std::string to_json(const SpectralResult& r, int indent = -1, int precision = 18);
std::string to_json(const LogEnclosure& r, const std::string& quantity_name, int indent = -1,
                    int precision = 15);

}  // namespace selfsim

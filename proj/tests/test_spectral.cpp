#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <selfsim/entropy.hpp>
#include <selfsim/kernel.hpp>
#include <selfsim/spectral.hpp>

#include "poly_oracle.hpp"
#include "test_util.hpp"

using namespace selfsim;
using namespace testutil;

namespace {

const IntMatrix kCantorA = {{2, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 1, 0}, {0, 1, 0, 1}};

KernelPresentation kernel_of(const std::string& name) {
  return compute_kernel(saturate(builtin_automaton(name)));
}

// independent check that [lo, hi] isolates the largest real root of the
// characteristic polynomial: at least one root inside (after an epsilon
// widening for the exact-endpoint case), none above hi + tol
void check_against_charpoly(const IntMatrix& a, const SpectralResult& r, const Rat& tol) {
  auto poly = polyoracle::charpoly(a);
  Rat eps(1, 1000000);
  int inside = polyoracle::sturm_count(poly, r.lower - eps, r.upper + eps);
  CHECK(inside >= 1);
  Rat bound = polyoracle::cauchy_bound(poly);
  int above = polyoracle::sturm_count(poly, r.upper + tol, bound);
  CHECK(above == 0);
}

}  // namespace

TEST_CASE("scc decomposition of the Cantor matrix: four singletons") {
  Condensation c = scc_decompose(kCantorA);
  REQUIRE(c.components.size() == 4);
  for (const auto& comp : c.components) CHECK(comp.size() == 1);
  // edges j -> i for A[i][j] > 0: 0->1, 1->2, 1->3 in the condensation
  CHECK(std::find(c.dag.begin(), c.dag.end(), std::make_pair(0, 1)) != c.dag.end());
  CHECK(std::find(c.dag.begin(), c.dag.end(), std::make_pair(1, 2)) != c.dag.end());
  CHECK(std::find(c.dag.begin(), c.dag.end(), std::make_pair(1, 3)) != c.dag.end());
  CHECK(c.dag.size() == 3);
}

TEST_CASE("scc decomposition merges a 2-cycle and keeps order deterministic") {
  Condensation c = scc_decompose({{0, 1}, {1, 0}});
  REQUIRE(c.components.size() == 1);
  CHECK(c.components[0] == std::vector<int>{0, 1});
  Condensation single = scc_decompose({{1}});
  CHECK(single.components == std::vector<std::vector<int>>{{0}});
  CHECK(single.dag.empty());
}

TEST_CASE("spectral radius of the Cantor matrix is certified around 2") {
  Rat tol = parse_rational("1e-12");
  SpectralResult r = spectral_radius(kCantorA, tol);
  CHECK(r.certified);
  CHECK(r.lower <= Rat(2));
  CHECK(Rat(2) <= r.upper);
  CHECK(r.upper - r.lower <= tol);
  CHECK(r.scc_witness == std::vector<int>{0});
  check_against_charpoly(kCantorA, r, tol);
}

TEST_CASE("exact corner cases") {
  SpectralResult one = spectral_radius({{1}}, parse_rational("1e-12"));
  CHECK(one.lower == Rat(1));
  CHECK(one.upper == Rat(1));
  CHECK(one.certified);

  SpectralResult zero = spectral_radius({{0}}, parse_rational("1e-12"));
  CHECK(zero.lower == Rat(0));
  CHECK(zero.upper == Rat(0));

  SpectralResult swap2 = spectral_radius({{0, 2}, {2, 0}}, parse_rational("1e-12"));
  CHECK(swap2.lower <= Rat(2));
  CHECK(Rat(2) <= swap2.upper);
  CHECK(swap2.upper - swap2.lower <= parse_rational("1e-12"));
}

TEST_CASE("the carpet kernel matrix has spectral radius 8") {
  KernelPresentation kp = kernel_of("sierpinski-carpet");
  Rat tol = parse_rational("1e-12");
  SpectralResult r = spectral_radius(kp.matrix, tol);
  CHECK(r.certified);
  CHECK(r.lower <= Rat(8));
  CHECK(Rat(8) <= r.upper);
  CHECK(r.upper - r.lower <= tol);
  // the dominant component is the carpet element itself, an exact 1x1 block
  CHECK(r.scc_witness == std::vector<int>{0});
}

TEST_CASE("an irreducible matrix with irrational radius converges and certifies") {
  // [[1,1],[1,0]]: rho is the golden ratio
  IntMatrix fib = {{1, 1}, {1, 0}};
  Rat tol = parse_rational("1e-12");
  SpectralResult r = spectral_radius(fib, tol);
  CHECK(r.certified);
  CHECK(r.upper - r.lower <= tol);
  double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(std::fabs(r.value - phi) < 1e-9);
  check_against_charpoly(fib, r, tol);
}

TEST_CASE("iteration cap yields an uncertified but sound enclosure") {
  IntMatrix fib = {{1, 1}, {1, 0}};
  SpectralResult r = spectral_radius(fib, parse_rational("1e-12"), 2);
  CHECK_FALSE(r.certified);
  double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(to_double(r.lower) <= phi);
  CHECK(phi <= to_double(r.upper));
}

TEST_CASE("characteristic polynomial cross-check on small corpus matrices") {
  Rat tol = parse_rational("1e-10");
  for (const std::string& name : {"cantor", "singleton-zero", "full-cube-2-1", "full-cube-2-2"}) {
    KernelPresentation kp = kernel_of(name);
    if (kp.size() > 6) continue;
    SpectralResult r = spectral_radius(kp.matrix, tol);
    check_against_charpoly(kp.matrix, r, tol);
  }
  // the Cantor counting-automaton transfer matrix exercises n = 6
  KernelPresentation cantor = kernel_of("cantor");
  CountingAutomaton ca = counting_automaton(cantor);
  REQUIRE(ca.transfer.size() == 7);
  SpectralResult r = spectral_radius(ca.transfer, tol);
  check_against_charpoly(ca.transfer, r, tol);
}

TEST_CASE("rho(A) equals rho(A transposed)") {
  for (const std::string& name : builtin_names()) {
    KernelPresentation kp = kernel_of(name);
    IntMatrix at(kp.matrix.size(), std::vector<long long>(kp.matrix.size(), 0));
    for (size_t i = 0; i < kp.matrix.size(); ++i)
      for (size_t j = 0; j < kp.matrix.size(); ++j) at[j][i] = kp.matrix[i][j];
    Rat tol = parse_rational("1e-10");
    SpectralResult r1 = spectral_radius(kp.matrix, tol);
    SpectralResult r2 = spectral_radius(at, tol);
    CHECK_FALSE(r1.upper < r2.lower);
    CHECK_FALSE(r2.upper < r1.lower);
  }
}

TEST_CASE("relabeling the kernel elements leaves the enclosure identical") {
  KernelPresentation kp = kernel_of("cantor");
  std::vector<int> perm = {2, 0, 3, 1};  // bijection on indices
  IntMatrix permuted(kp.matrix.size(), std::vector<long long>(kp.matrix.size(), 0));
  for (size_t i = 0; i < kp.matrix.size(); ++i)
    for (size_t j = 0; j < kp.matrix.size(); ++j)
      permuted[static_cast<size_t>(perm[i])][static_cast<size_t>(perm[j])] = kp.matrix[i][j];
  Rat tol = parse_rational("1e-12");
  SpectralResult a = spectral_radius(kp.matrix, tol);
  SpectralResult b = spectral_radius(permuted, tol);
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
}

TEST_CASE("dimension values land on the known constants") {
  Rat tol = parse_rational("1e-12");
  LogEnclosure cantor = dimension(kernel_of("cantor"), tol);
  CHECK(std::fabs(cantor.value - 0.6309297535714574) <= 1e-11);

  LogEnclosure full = dimension(kernel_of("full-cube-2-1"), tol);
  CHECK(full.rho.lower == Rat(2));
  CHECK(full.rho.upper == Rat(2));
  CHECK(std::fabs(full.value - 1.0) <= 1e-13);

  LogEnclosure vicsek = dimension(kernel_of("vicsek"), tol);
  CHECK(std::fabs(vicsek.value - 1.4649735207179271) <= 1e-11);

  LogEnclosure point = dimension(kernel_of("singleton-zero"), tol);
  CHECK(point.value == 0.0);
}

TEST_CASE("dimension stays within [0, d] and hits d exactly on full cubes") {
  Rat tol = parse_rational("1e-10");
  for (const std::string& name : builtin_names()) {
    KernelPresentation kp = kernel_of(name);
    LogEnclosure e = dimension(kp, tol);
    CHECK(e.lower >= 0.0);
    CHECK(e.upper <= static_cast<double>(kp.d));
    long long kd = alphabet_size(kp.k, kp.d);
    bool full_rho = e.rho.lower == Rat(BigInt(kd), 1) && e.rho.upper == Rat(BigInt(kd), 1);
    if (name.rfind("full-cube-", 0) == 0) {
      CHECK(full_rho);
      CHECK(std::fabs(e.value - kp.d) <= 1e-12);
    } else {
      CHECK_FALSE(full_rho);
    }
  }
}

TEST_CASE("tolerance must be positive and matrices square") {
  CHECK_THROWS_AS(spectral_radius({{1}}, Rat(0)), Error);
  CHECK_THROWS_AS(spectral_radius({{1, 2}}, Rat(1, 100)), Error);
}

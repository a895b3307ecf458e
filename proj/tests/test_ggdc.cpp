#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <selfsim/ggdc.hpp>

#include "test_util.hpp"

using namespace selfsim;
using namespace testutil;

namespace {

KernelPresentation kernel_of(const std::string& name) {
  return compute_kernel(saturate(builtin_automaton(name)));
}

std::set<std::pair<std::string, std::string>> edge_labels(const GgdcGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (size_t v = 0; v < g.vertices.size(); ++v)
    for (int t : g.out_edges[v]) out.emplace(g.label(static_cast<int>(v)), g.label(t));
  return out;
}

}  // namespace

TEST_CASE("the Cantor construction graph has the published shape") {
  GgdcGraph g = build_ggdc(kernel_of("cantor"));
  REQUIRE(g.vertices.size() == 7);
  CHECK(g.edge_count() == 12);

  std::set<std::string> labels;
  for (size_t v = 0; v < g.vertices.size(); ++v) labels.insert(g.label(static_cast<int>(v)));
  CHECK(labels == std::set<std::string>{"111", "121", "211", "132", "142", "133", "144"});

  std::set<std::pair<std::string, std::string>> expected = {
      {"111", "111"}, {"111", "121"}, {"111", "211"},
      {"211", "111"}, {"211", "121"}, {"211", "211"},
      {"121", "132"}, {"121", "142"},
      {"132", "133"}, {"142", "144"},
      {"133", "133"}, {"144", "144"},
  };
  CHECK(edge_labels(g) == expected);

  // seed cubes of the container block 0 are the three level-1 intervals
  std::set<std::pair<Rat, Rat>> block0;
  for (const GgdcVertex& v : g.vertices)
    if (v.j == 0) block0.emplace(v.seed.lo[0], v.seed.hi[0]);
  CHECK(block0 == std::set<std::pair<Rat, Rat>>{
                      {Rat(0), Rat(1, 3)}, {Rat(1, 3), Rat(2, 3)}, {Rat(2, 3), Rat(1)}});
}

TEST_CASE("singleton and full-cube graphs") {
  GgdcGraph point = build_ggdc(kernel_of("singleton-zero"));
  CHECK(point.vertices.size() == 1);
  CHECK(point.edge_count() == 1);
  CHECK(point.out_edges[0] == std::vector<int>{0});

  GgdcGraph full = build_ggdc(kernel_of("full-cube-2-1"));
  CHECK(full.vertices.size() == 2);
  CHECK(full.edge_count() == 4);  // complete digraph on two vertices
}

TEST_CASE("vertex and edge counts follow from the matrix") {
  for (const std::string& name : builtin_names()) {
    KernelPresentation kp = kernel_of(name);
    GgdcGraph g = build_ggdc(kp);
    long long vertex_sum = 0;
    for (const auto& row : kp.matrix)
      for (long long v : row) vertex_sum += v;
    CHECK(static_cast<long long>(g.vertices.size()) == vertex_sum);

    // each vertex (h,i,j) has one out-edge per copy inside container i
    long long expected_edges = 0;
    for (const GgdcVertex& v : g.vertices) {
      long long in_copies = 0;
      for (int s = 0; s < kp.size(); ++s)
        in_copies += kp.matrix[static_cast<size_t>(s)][static_cast<size_t>(v.i)];
      expected_edges += in_copies;
    }
    CHECK(g.edge_count() == expected_edges);
  }
}

TEST_CASE("all Mauldin-Williams axioms pass on the corpus") {
  for (const std::string& name : builtin_names()) {
    GgdcGraph g = build_ggdc(kernel_of(name));
    GgdcValidation v = validate_ggdc(g);
    CHECK(v.pass);
    CHECK(v.violations.empty());
  }
}

TEST_CASE("fault injection: removed out-edges are reported") {
  GgdcGraph g = build_ggdc(kernel_of("cantor"));
  g.out_edges[3].clear();
  GgdcValidation v = validate_ggdc(g);
  CHECK_FALSE(v.pass);
  bool found = false;
  for (const std::string& msg : v.violations)
    if (msg.find("no outgoing edge") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("fault injection: overlapping seed cubes are reported") {
  GgdcGraph g = build_ggdc(kernel_of("cantor"));
  g.vertices[1].seed = g.vertices[0].seed;  // force two identical seeds
  GgdcValidation v = validate_ggdc(g);
  CHECK_FALSE(v.pass);
  bool found = false;
  for (const std::string& msg : v.violations)
    if (msg.find("overlap") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("graph dimension equals the matrix dimension") {
  Rat tol = parse_rational("1e-9");
  LogEnclosure cantor = ggdc_dimension(build_ggdc(kernel_of("cantor")), tol);
  CHECK(std::fabs(cantor.value - 0.6309297535714574) <= 1e-9);
  CHECK(cantor.rho.lower == Rat(2));
  CHECK(cantor.rho.upper == Rat(2));

  GgdcGraph cg = build_ggdc(kernel_of("cantor"));
  // the witness component is the pair of Cantor-in-Cantor copies 111 and 211
  std::set<std::string> witness;
  for (int v : cantor.rho.scc_witness) witness.insert(cg.label(v));
  CHECK(witness == std::set<std::string>{"111", "211"});

  CHECK(ggdc_dimension(build_ggdc(kernel_of("singleton-zero")), tol).value == 0.0);
  CHECK(std::fabs(ggdc_dimension(build_ggdc(kernel_of("full-cube-2-1")), tol).value - 1.0) <= 1e-12);
}

TEST_CASE("spectral transfer: rho of the graph matches rho of A on the corpus") {
  Rat tol = parse_rational("1e-9");
  for (const std::string& name : builtin_names()) {
    KernelPresentation kp = kernel_of(name);
    SpectralResult a = spectral_radius(kp.matrix, tol);
    LogEnclosure gd = ggdc_dimension(build_ggdc(kp), tol);
    CHECK(a.upper - a.lower <= tol);
    CHECK(gd.rho.upper - gd.rho.lower <= tol);
    CHECK_FALSE(gd.rho.upper < a.lower);
    CHECK_FALSE(a.upper < gd.rho.lower);
  }
}

TEST_CASE("the first Cantor level reproduces the construction diagram") {
  GgdcGraph g = build_ggdc(kernel_of("cantor"));
  std::vector<RatBox> level1 = level_sets(g, 1);
  // every cube has width 1/9
  for (const RatBox& b : level1) CHECK(b.hi[0] - b.lo[0] == Rat(1, 9));
  // within block 0 the union is [0,4/9] and [5/9,1]: ninth-positions 0..3, 5..8
  std::set<Rat> corners;
  for (const RatBox& b : level1)
    if (b.lo[0] < Rat(1)) corners.insert(b.lo[0]);
  CHECK(corners == std::set<Rat>{Rat(0), Rat(1, 9), Rat(2, 9), Rat(3, 9), Rat(5, 9), Rat(6, 9),
                                 Rat(7, 9), Rat(8, 9)});
}

TEST_CASE("singleton levels shrink toward the block corner") {
  GgdcGraph g = build_ggdc(kernel_of("singleton-zero"));
  for (int p = 1; p <= 4; ++p) {
    std::vector<RatBox> cubes = level_sets(g, p);
    REQUIRE(cubes.size() == 1);
    CHECK(cubes[0].lo[0] == Rat(0));
    BigInt den = 1;
    for (int i = 0; i <= p; ++i) den *= 3;
    CHECK(cubes[0].hi[0] == Rat(1, den));
  }
}

TEST_CASE("full-cube levels tile the block") {
  GgdcGraph g = build_ggdc(kernel_of("full-cube-2-1"));
  for (int p = 1; p <= 4; ++p) {
    std::vector<RatBox> cubes = level_sets(g, p);
    long long expect = 1;
    for (int i = 0; i <= p; ++i) expect *= 2;
    CHECK(static_cast<long long>(cubes.size()) == expect);
  }
}

TEST_CASE("levels are nested cube-by-cube") {
  auto contains = [](const RatBox& outer, const RatBox& inner) {
    for (size_t axis = 0; axis < outer.lo.size(); ++axis)
      if (inner.lo[axis] < outer.lo[axis] || inner.hi[axis] > outer.hi[axis]) return false;
    return true;
  };
  std::map<std::string, int> depth = {
      {"cantor", 5}, {"singleton-zero", 5}, {"full-cube-2-1", 5},
      {"vicsek", 3}, {"cantor-square", 3}, {"sierpinski-carpet", 2},
  };
  for (const auto& [name, pmax] : depth) {
    GgdcGraph g = build_ggdc(kernel_of(name));
    std::vector<RatBox> prev = level_sets(g, 1);
    for (int p = 2; p <= pmax; ++p) {
      std::vector<RatBox> next = level_sets(g, p);
      for (const RatBox& cube : next) {
        bool nested = false;
        for (const RatBox& parent : prev)
          if (contains(parent, cube)) {
            nested = true;
            break;
          }
        CHECK(nested);
      }
      prev = std::move(next);
    }
  }
}

TEST_CASE("path budget is enforced") {
  GgdcGraph g = build_ggdc(kernel_of("sierpinski-carpet"));
  CHECK_THROWS_AS(level_sets(g, 3, 50), Error);
  try {
    level_sets(g, 3, 50);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PathBudgetExceeded);
  }
}

TEST_CASE("DOT export lists every vertex and edge") {
  GgdcGraph g = build_ggdc(kernel_of("cantor"));
  std::string dot = to_dot(g);
  size_t arrows = 0;
  for (size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 2)) ++arrows;
  CHECK(arrows == 12);
  for (const std::string& label : {"111", "121", "211", "132", "142", "133", "144"})
    CHECK(dot.find("\"" + label + "\"") != std::string::npos);
}

TEST_CASE("JSON export carries exact rational corners") {
  GgdcGraph g = build_ggdc(kernel_of("cantor"));
  std::string j = to_json(g);
  CHECK(j.find("\"1\",\"3\"") != std::string::npos);  // the corner 1/3 as num/den strings
  CHECK(j.find("\"vertices\"") != std::string::npos);
}

#include <doctest.h>

#include <selfsim/entropy.hpp>
#include <selfsim/render.hpp>
#include <selfsim/specdsl.hpp>

#include "test_util.hpp"

using namespace selfsim;
using namespace testutil;

namespace {

KernelPresentation kernel_of(const std::string& name) {
  return compute_kernel(saturate(builtin_automaton(name)));
}

KernelPresentation singleton_2d() {
  return compute_kernel(saturate(validate(parse_spec("base 3\ndim 2\nallow (0,0)"))));
}

size_t count_rects(const std::string& svg) {
  size_t n = 0;
  for (size_t pos = svg.find("<rect"); pos != std::string::npos; pos = svg.find("<rect", pos + 5)) ++n;
  return n;
}

}  // namespace

TEST_CASE("level approximation of the Cantor set") {
  KernelPresentation kp = kernel_of("cantor");
  CubeList p1 = level_approximation(kp, 0, 1);
  CHECK(p1.positions == std::vector<std::vector<long long>>{{0}, {1}, {2}});
  CubeList p2 = level_approximation(kp, 0, 2);
  CHECK(p2.positions ==
        std::vector<std::vector<long long>>{{0}, {1}, {2}, {3}, {5}, {6}, {7}, {8}});
}

TEST_CASE("level approximation of the singleton stays at the origin") {
  KernelPresentation kp = kernel_of("singleton-zero");
  CubeList c = level_approximation(kp, 0, 4);
  CHECK(c.positions == std::vector<std::vector<long long>>{{0}});
}

TEST_CASE("cube list size equals the counted cubes for every element") {
  for (const std::string& name : builtin_names()) {
    KernelPresentation kp = kernel_of(name);
    int pmax = kp.d >= 2 ? 4 : 6;
    for (int i = 0; i < kp.size(); ++i)
      for (int p = 0; p <= pmax; ++p) {
        CubeList c = level_approximation(kp, i, p);
        CHECK(BigInt(static_cast<long long>(c.positions.size())) == cube_count(kp, i, p));
      }
  }
}

TEST_CASE("every cube's parent appears one level up") {
  for (const std::string& name : {"cantor", "vicsek", "sierpinski-carpet"}) {
    KernelPresentation kp = kernel_of(name);
    int pmax = kp.d >= 2 ? 3 : 5;
    for (int p = 1; p <= pmax; ++p) {
      CubeList fine = level_approximation(kp, 0, p);
      CubeList coarse = level_approximation(kp, 0, p - 1);
      std::set<std::vector<long long>> coarse_set(coarse.positions.begin(), coarse.positions.end());
      for (const auto& pos : fine.positions) {
        std::vector<long long> parent(pos.size());
        for (size_t axis = 0; axis < pos.size(); ++axis) parent[axis] = pos[axis] / kp.k;
        CHECK(coarse_set.count(parent) == 1);
      }
    }
  }
}

TEST_CASE("SVG output is deterministic with a fixed viewBox") {
  KernelPresentation kp = kernel_of("cantor");
  CubeList c = level_approximation(kp, 0, 3);
  std::string svg1 = render_svg(c);
  std::string svg2 = render_svg(c);
  CHECK(svg1 == svg2);
  CHECK(svg1.find("viewBox=\"0 0 1024 1024\"") != std::string::npos);
  CHECK(count_rects(svg1) == 18);  // cube_count(0,3)
}

TEST_CASE("the level-1 Cantor SVG matches its golden bytes") {
  KernelPresentation kp = kernel_of("cantor");
  std::string svg = render_svg(level_approximation(kp, 0, 1));
  const std::string golden =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1024 1024\" width=\"1024\" "
      "height=\"1024\">\n"
      "  <rect x=\"0\" y=\"448\" width=\"341.333333\" height=\"128\"/>\n"
      "  <rect x=\"341.333333\" y=\"448\" width=\"341.333333\" height=\"128\"/>\n"
      "  <rect x=\"682.666666\" y=\"448\" width=\"341.333333\" height=\"128\"/>\n"
      "</svg>\n";
  CHECK(svg == golden);
}

TEST_CASE("carpet SVG rectangle count follows the box oracle") {
  KernelPresentation kp = kernel_of("sierpinski-carpet");
  CubeList c = level_approximation(kp, 0, 2);
  CHECK(count_rects(render_svg(c)) == 80);
}

TEST_CASE("PGM: carpet level 1 at resolution 9 is fully dark") {
  KernelPresentation kp = kernel_of("sierpinski-carpet");
  std::string pgm = render_pgm(level_approximation(kp, 0, 1), 9);
  std::string expected = "P5\n9 9\n255\n" + std::string(81, '\0');
  CHECK(pgm == expected);
}

TEST_CASE("PGM: full cube is fully dark") {
  KernelPresentation kp = kernel_of("full-cube-2-2");
  std::string pgm = render_pgm(level_approximation(kp, 0, 2), 16);
  CHECK(pgm.substr(0, 10) == "P5\n16 16\n2");
  std::string pixels = pgm.substr(pgm.find("255\n") + 4);
  REQUIRE(pixels.size() == 256);
  for (char px : pixels) CHECK(px == '\0');
}

TEST_CASE("PGM: a planar singleton darkens exactly the corner cell") {
  std::string pgm = render_pgm(level_approximation(singleton_2d(), 0, 2), 9);
  std::string header = "P5\n9 9\n255\n";
  REQUIRE(pgm.substr(0, header.size()) == header);
  std::string pixels = pgm.substr(header.size());
  REQUIRE(pixels.size() == 81);
  // cube (0,0) is the bottom-left corner: image row 8, column 0
  for (int row = 0; row < 9; ++row)
    for (int col = 0; col < 9; ++col) {
      char expect = (row == 8 && col == 0) ? '\0' : static_cast<char>(255);
      CHECK(pixels[static_cast<size_t>(row * 9 + col)] == expect);
    }
}

TEST_CASE("PGM rejects mismatched resolutions and dimensions") {
  KernelPresentation carpet = kernel_of("sierpinski-carpet");
  CubeList c = level_approximation(carpet, 0, 2);
  CHECK_THROWS_AS(render_pgm(c, 10), Error);
  try {
    render_pgm(c, 10);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResolutionMismatch);
  }
  KernelPresentation cantor = kernel_of("cantor");
  CubeList bars = level_approximation(cantor, 0, 1);
  CHECK_THROWS_AS(render_pgm(bars, 9), Error);
  try {
    render_pgm(bars, 9);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedDimension);
  }
}

TEST_CASE("slices project planar cube lists down to bars") {
  KernelPresentation kp = kernel_of("vicsek");
  CubeList c = level_approximation(kp, 0, 1);
  RenderOptions options;
  options.slice = {{1, 1}};  // fix y = middle row
  std::string svg = render_svg(c, options);
  CHECK(count_rects(svg) == 3);  // cells (0,1), (1,1), (2,1)
}

TEST_CASE("budget stops oversized approximations") {
  KernelPresentation kp = kernel_of("sierpinski-carpet");
  CHECK_THROWS_AS(level_approximation(kp, 0, 4, 100), Error);
  try {
    level_approximation(kp, 0, 4, 100);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

#include "selfsim/render.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "selfsim/entropy.hpp"

namespace selfsim {

CubeList level_approximation(const KernelPresentation& kp, int element, int p, long long budget) {
  if (element < 0 || element >= kp.size())
    throw Error(ErrorCode::InvalidArgument, "element index out of range");
  if (p < 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 0");
  BigInt expected = cube_count(kp, element, p);
  if (expected > budget)
    throw Error(ErrorCode::BudgetExceeded,
                "level approximation needs " + expected.str() + " cubes, budget " +
                    std::to_string(budget));

  CubeList out;
  out.k = kp.k;
  out.d = kp.d;
  out.p = p;

  struct Frame {
    int element;
    int depth;
    std::vector<long long> pos;
  };
  std::vector<Frame> stack;
  stack.push_back({element, 0, std::vector<long long>(static_cast<size_t>(kp.d), 0)});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.depth == p) {
      out.positions.push_back(std::move(f.pos));
      continue;
    }
    for (const auto& [sym, target] : kp.table[static_cast<size_t>(f.element)]) {
      DigitTuple b = DigitTuple::from_code(sym, kp.k, kp.d);
      std::vector<long long> pos = f.pos;
      for (int axis = 0; axis < kp.d; ++axis)
        pos[static_cast<size_t>(axis)] = pos[static_cast<size_t>(axis)] * kp.k + b[axis];
      stack.push_back({target, f.depth + 1, std::move(pos)});
    }
  }
  std::sort(out.positions.begin(), out.positions.end());
  out.positions.erase(std::unique(out.positions.begin(), out.positions.end()), out.positions.end());
  return out;
}

namespace {

long long ipow(int base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// fixed-point coordinate: value = numerator * canvas / denominator, printed
// with up to 6 fractional digits, trailing zeros trimmed; exact and
// deterministic
std::string coord(long long numerator, long long denominator, int canvas) {
  long long scaled = numerator * canvas;
  long long whole = scaled / denominator;
  long long rem = scaled % denominator;
  std::string s = std::to_string(whole);
  if (rem != 0) {
    std::string frac;
    for (int i = 0; i < 6 && rem != 0; ++i) {
      rem *= 10;
      frac.push_back(static_cast<char>('0' + rem / denominator));
      rem %= denominator;
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) s += "." + frac;
  }
  return s;
}

CubeList apply_slice(const CubeList& cubes, const std::vector<std::pair<int, long long>>& slice) {
  std::vector<bool> fixed(static_cast<size_t>(cubes.d), false);
  for (auto [axis, pos] : slice) {
    if (axis < 0 || axis >= cubes.d)
      throw Error(ErrorCode::InvalidArgument, "slice axis out of range");
    (void)pos;
    fixed[static_cast<size_t>(axis)] = true;
  }
  std::vector<int> free_axes;
  for (int axis = 0; axis < cubes.d; ++axis)
    if (!fixed[static_cast<size_t>(axis)]) free_axes.push_back(axis);
  if (free_axes.size() > 2)
    throw Error(ErrorCode::UnsupportedDimension,
                "slice must fix all but at most two coordinates");

  CubeList out;
  out.k = cubes.k;
  out.d = static_cast<int>(free_axes.size());
  out.p = cubes.p;
  std::set<std::vector<long long>> seen;
  for (const auto& pos : cubes.positions) {
    bool match = true;
    for (auto [axis, want] : slice)
      if (pos[static_cast<size_t>(axis)] != want) match = false;
    if (!match) continue;
    std::vector<long long> projected;
    for (int axis : free_axes) projected.push_back(pos[static_cast<size_t>(axis)]);
    seen.insert(std::move(projected));
  }
  out.positions.assign(seen.begin(), seen.end());
  return out;
}

}  // namespace

std::string render_svg(const CubeList& input, const RenderOptions& options) {
  CubeList cubes = input;
  if (!options.slice.empty()) cubes = apply_slice(cubes, options.slice);
  if (cubes.d > 2)
    throw Error(ErrorCode::UnsupportedDimension,
                "SVG rendering supports d in {1,2}; pass a slice for higher d");

  int canvas = options.canvas;
  long long grid = ipow(cubes.k, cubes.p);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << canvas << " " << canvas
     << "\" width=\"" << canvas << "\" height=\"" << canvas << "\">\n";
  if (cubes.d == 1) {
    // bars on the middle horizontal band, y grows downward in SVG
    std::string y = coord(7, 16, canvas);
    std::string h = coord(1, 8, canvas);
    for (const auto& pos : cubes.positions) {
      os << "  <rect x=\"" << coord(pos[0], grid, canvas) << "\" y=\"" << y << "\" width=\""
         << coord(1, grid, canvas) << "\" height=\"" << h << "\"/>\n";
    }
  } else {
    for (const auto& pos : cubes.positions) {
      // cube (x, y) with y pointing up; flip for SVG
      os << "  <rect x=\"" << coord(pos[0], grid, canvas) << "\" y=\""
         << coord(grid - 1 - pos[1], grid, canvas) << "\" width=\"" << coord(1, grid, canvas)
         << "\" height=\"" << coord(1, grid, canvas) << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_pgm(const CubeList& cubes, int resolution) {
  if (cubes.d != 2)
    throw Error(ErrorCode::UnsupportedDimension, "PGM rendering requires d = 2");
  long long grid = ipow(cubes.k, cubes.p);
  if (resolution <= 0 || resolution % grid != 0)
    throw Error(ErrorCode::ResolutionMismatch,
                "resolution " + std::to_string(resolution) + " is not a multiple of " +
                    std::to_string(grid));
  if (resolution > 8192)
    throw Error(ErrorCode::ResolutionMismatch, "resolution above the 8192 pixel cap");
  long long scale = resolution / grid;

  std::string pixels(static_cast<size_t>(resolution) * static_cast<size_t>(resolution),
                     static_cast<char>(255));
  for (const auto& pos : cubes.positions) {
    long long x0 = pos[0] * scale;
    long long y_top = (grid - 1 - pos[1]) * scale;  // row 0 is the top of the image
    for (long long dy = 0; dy < scale; ++dy) {
      size_t row_start = static_cast<size_t>((y_top + dy) * resolution + x0);
      for (long long dx = 0; dx < scale; ++dx) pixels[row_start + static_cast<size_t>(dx)] = 0;
    }
  }
  std::ostringstream os;
  os << "P5\n" << resolution << " " << resolution << "\n255\n";
  return os.str() + pixels;
}

}  // namespace selfsim

#include "selfsim/ggdc.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

namespace selfsim {

std::vector<Rat> SimilarityMap::apply(const std::vector<Rat>& x) const {
  std::vector<Rat> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] * ratio + translation[i];
  return y;
}

bool RatBox::operator<(const RatBox& other) const {
  if (lo != other.lo) return std::lexicographical_compare(lo.begin(), lo.end(), other.lo.begin(), other.lo.end());
  return std::lexicographical_compare(hi.begin(), hi.end(), other.hi.begin(), other.hi.end());
}

long long GgdcGraph::edge_count() const {
  long long total = 0;
  for (const auto& targets : out_edges) total += static_cast<long long>(targets.size());
  return total;
}

std::string GgdcGraph::label(int v) const {
  const GgdcVertex& vx = vertices[static_cast<size_t>(v)];
  // display form is 1-based; dotted when any index needs more than one digit
  if (vx.h <= 9 && vx.i + 1 <= 9 && vx.j + 1 <= 9)
    return std::to_string(vx.h) + std::to_string(vx.i + 1) + std::to_string(vx.j + 1);
  return std::to_string(vx.h) + "." + std::to_string(vx.i + 1) + "." + std::to_string(vx.j + 1);
}

GgdcGraph build_ggdc(const KernelPresentation& kp) {
  GgdcGraph g;
  g.k = kp.k;
  g.d = kp.d;
  g.n = kp.size();

  Rat inv_k(1, kp.k);
  for (int j = 0; j < kp.size(); ++j) {
    std::map<int, int> copies_seen;  // element i -> running h
    for (const auto& [sym, i] : kp.table[static_cast<size_t>(j)]) {
      int h = ++copies_seen[i];
      DigitTuple b = DigitTuple::from_code(sym, kp.k, kp.d);
      RatBox seed;
      seed.lo.resize(static_cast<size_t>(kp.d));
      seed.hi.resize(static_cast<size_t>(kp.d));
      for (int axis = 0; axis < kp.d; ++axis) {
        Rat corner = Rat(b[axis], kp.k) + (axis == 0 ? Rat(2 * j, 1) : Rat(0));
        seed.lo[static_cast<size_t>(axis)] = corner;
        seed.hi[static_cast<size_t>(axis)] = corner + inv_k;
      }
      g.vertices.push_back({h, i, j, b, seed});

      // T maps the block of the contained element i onto the seed cube
      SimilarityMap map;
      map.ratio = inv_k;
      map.translation.resize(static_cast<size_t>(kp.d));
      for (int axis = 0; axis < kp.d; ++axis) {
        Rat block_origin = axis == 0 ? Rat(2 * i, 1) : Rat(0);
        map.translation[static_cast<size_t>(axis)] =
            seed.lo[static_cast<size_t>(axis)] - block_origin * inv_k;
      }
      g.maps.push_back(std::move(map));
    }
  }

  // (h,i,j) -> every vertex whose container is i
  std::map<int, std::vector<int>> by_container;
  for (size_t v = 0; v < g.vertices.size(); ++v)
    by_container[g.vertices[v].j].push_back(static_cast<int>(v));
  g.out_edges.resize(g.vertices.size());
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    auto it = by_container.find(g.vertices[v].i);
    if (it != by_container.end()) g.out_edges[v] = it->second;
  }
  return g;
}

namespace {

bool interiors_disjoint(const RatBox& a, const RatBox& b) {
  for (size_t axis = 0; axis < a.lo.size(); ++axis)
    if (a.hi[axis] <= b.lo[axis] || b.hi[axis] <= a.lo[axis]) return true;
  return false;
}

bool contains(const RatBox& outer, const RatBox& inner) {
  for (size_t axis = 0; axis < outer.lo.size(); ++axis)
    if (inner.lo[axis] < outer.lo[axis] || inner.hi[axis] > outer.hi[axis]) return false;
  return true;
}

RatBox apply_to_box(const SimilarityMap& m, const RatBox& b) {
  return RatBox{m.apply(b.lo), m.apply(b.hi)};
}

}  // namespace

GgdcValidation validate_ggdc(const GgdcGraph& g) {
  GgdcValidation v;
  auto fail = [&](std::string msg) {
    v.pass = false;
    v.violations.push_back(std::move(msg));
  };

  for (size_t i = 0; i < g.vertices.size(); ++i)
    if (g.out_edges[i].empty()) fail("vertex " + g.label(static_cast<int>(i)) + " has no outgoing edge");

  // seed cubes have pairwise disjoint interiors
  for (size_t a = 0; a < g.vertices.size(); ++a)
    for (size_t b = a + 1; b < g.vertices.size(); ++b)
      if (!interiors_disjoint(g.vertices[a].seed, g.vertices[b].seed))
        fail("seed cubes " + g.label(static_cast<int>(a)) + " and " + g.label(static_cast<int>(b)) +
             " overlap");

  // images of target seeds under the edge map stay in the source seed and
  // have pairwise disjoint interiors
  for (size_t a = 0; a < g.vertices.size(); ++a) {
    std::vector<RatBox> images;
    for (int t : g.out_edges[a]) {
      RatBox img = apply_to_box(g.maps[a], g.vertices[static_cast<size_t>(t)].seed);
      if (!contains(g.vertices[a].seed, img))
        fail("image of " + g.label(t) + " escapes seed of " + g.label(static_cast<int>(a)));
      images.push_back(std::move(img));
    }
    for (size_t x = 0; x < images.size(); ++x)
      for (size_t y = x + 1; y < images.size(); ++y)
        if (!interiors_disjoint(images[x], images[y]))
          fail("images inside " + g.label(static_cast<int>(a)) + " overlap");
  }

  // every cycle's ratio product < 1; all ratios are equal so it is enough
  // that the ratio is < 1 on every component that carries a cycle
  IntMatrix adj(g.vertices.size(), std::vector<long long>(g.vertices.size(), 0));
  for (size_t a = 0; a < g.vertices.size(); ++a)
    for (int t : g.out_edges[a]) adj[static_cast<size_t>(t)][a] = 1;
  Condensation cond = scc_decompose(adj);
  for (const auto& comp : cond.components) {
    bool has_cycle = comp.size() > 1;
    if (comp.size() == 1) {
      int only = comp.front();
      has_cycle = std::find(g.out_edges[static_cast<size_t>(only)].begin(),
                            g.out_edges[static_cast<size_t>(only)].end(),
                            only) != g.out_edges[static_cast<size_t>(only)].end();
    }
    if (!has_cycle) continue;
    for (int member : comp)
      if (g.maps[static_cast<size_t>(member)].ratio >= Rat(1))
        fail("cycle through " + g.label(member) + " has ratio product >= 1");
  }
  return v;
}

LogEnclosure ggdc_dimension(const GgdcGraph& g, const Rat& tol) {
  IntMatrix adj(g.vertices.size(), std::vector<long long>(g.vertices.size(), 0));
  // edge v -> t contributes to column v, row t (the spectral module reads
  // A[i][j] > 0 as an edge j -> i)
  for (size_t v = 0; v < g.vertices.size(); ++v)
    for (int t : g.out_edges[v]) adj[static_cast<size_t>(t)][v] += 1;
  LogEnclosure out;
  out.base = g.k;
  out.rho = spectral_radius(adj, tol);
  out.lower = out.rho.lower > 0 ? std::max(0.0, log_base(out.rho.lower, g.k)) : 0.0;
  out.upper = out.rho.upper > 0 ? std::max(0.0, log_base(out.rho.upper, g.k)) : 0.0;
  out.upper = std::min(static_cast<double>(g.d), out.upper);
  if (out.lower > out.upper) out.lower = out.upper;
  out.value = (out.lower + out.upper) / 2;
  return out;
}

std::vector<RatBox> level_sets(const GgdcGraph& g, int p, long long cube_budget) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "level depth must be >= 1");

  // cubes(v, m): the cubes contributed by length-m paths starting at v, in
  // absolute coordinates; memoized per (v, m)
  std::map<std::pair<int, int>, std::set<RatBox>> memo;
  long long visited = 0;

  std::function<const std::set<RatBox>&(int, int)> cubes = [&](int v, int m) -> const std::set<RatBox>& {
    auto key = std::make_pair(v, m);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::set<RatBox> out;
    if (m == 0) {
      out.insert(g.vertices[static_cast<size_t>(v)].seed);
    } else {
      for (int t : g.out_edges[static_cast<size_t>(v)]) {
        for (const RatBox& sub : cubes(t, m - 1)) {
          if (++visited > cube_budget * 8)
            throw Error(ErrorCode::PathBudgetExceeded, "path expansion exceeds budget");
          out.insert(apply_to_box(g.maps[static_cast<size_t>(v)], sub));
        }
        if (static_cast<long long>(out.size()) > cube_budget)
          throw Error(ErrorCode::PathBudgetExceeded,
                      "level set exceeds cube budget " + std::to_string(cube_budget));
      }
    }
    return memo.emplace(key, std::move(out)).first->second;
  };

  std::set<RatBox> all;
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& set = cubes(static_cast<int>(v), p);
    all.insert(set.begin(), set.end());
    if (static_cast<long long>(all.size()) > cube_budget)
      throw Error(ErrorCode::PathBudgetExceeded,
                  "level set exceeds cube budget " + std::to_string(cube_budget));
  }
  return std::vector<RatBox>(all.begin(), all.end());
}

std::string to_dot(const GgdcGraph& g) {
  std::ostringstream os;
  os << "digraph ggdc {\n";
  for (size_t v = 0; v < g.vertices.size(); ++v)
    os << "  \"" << g.label(static_cast<int>(v)) << "\";\n";
  for (size_t v = 0; v < g.vertices.size(); ++v)
    for (int t : g.out_edges[v])
      os << "  \"" << g.label(static_cast<int>(v)) << "\" -> \"" << g.label(t) << "\";\n";
  os << "}\n";
  return os.str();
}

namespace {

nlohmann::ordered_json rat_json(const Rat& r) {
  return nlohmann::ordered_json::array({r.numerator().str(), r.denominator().str()});
}

nlohmann::ordered_json box_json(const RatBox& b) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json lo = nlohmann::ordered_json::array();
  nlohmann::ordered_json hi = nlohmann::ordered_json::array();
  for (const Rat& x : b.lo) lo.push_back(rat_json(x));
  for (const Rat& x : b.hi) hi.push_back(rat_json(x));
  j["lo"] = lo;
  j["hi"] = hi;
  return j;
}

}  // namespace

std::string to_json(const GgdcGraph& g, int indent) {
  nlohmann::ordered_json j;
  j["k"] = g.k;
  j["d"] = g.d;
  j["n"] = g.n;
  nlohmann::ordered_json verts = nlohmann::ordered_json::array();
  for (size_t v = 0; v < g.vertices.size(); ++v) {
    const GgdcVertex& vx = g.vertices[v];
    nlohmann::ordered_json jv;
    jv["h"] = vx.h;
    jv["i"] = vx.i;
    jv["j"] = vx.j;
    jv["label"] = g.label(static_cast<int>(v));
    jv["digits"] = vx.digit.to_vector();
    jv["seed"] = box_json(vx.seed);
    jv["map"] = {{"ratio", rat_json(g.maps[v].ratio)},
                 {"translation", [&] {
                    nlohmann::ordered_json t = nlohmann::ordered_json::array();
                    for (const Rat& x : g.maps[v].translation) t.push_back(rat_json(x));
                    return t;
                  }()}};
    jv["out"] = g.out_edges[v];
    verts.push_back(jv);
  }
  j["vertices"] = verts;
  return j.dump(indent);
}

}  // namespace selfsim

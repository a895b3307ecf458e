#include "selfsim/spectral.hpp"

#include <algorithm>
#include <json.hpp>
#include <set>
#include <sstream>

#include <boost/integer/common_factor_rt.hpp>

namespace selfsim {

namespace {

void check_square(const IntMatrix& a) {
  for (const auto& row : a) {
    if (row.size() != a.size())
      throw Error(ErrorCode::InvalidArgument, "matrix is not square");
    for (long long v : row)
      if (v < 0) throw Error(ErrorCode::InvalidArgument, "matrix has a negative entry");
  }
}

// Iterative Tarjan over the digraph j -> i when A[i][j] > 0.
struct Tarjan {
  const IntMatrix& a;
  int n;
  std::vector<int> index, low, on_stack, comp;
  std::vector<int> stack;
  int next_index = 0, comp_count = 0;

  explicit Tarjan(const IntMatrix& m)
      : a(m),
        n(static_cast<int>(m.size())),
        index(static_cast<size_t>(n), -1),
        low(static_cast<size_t>(n), 0),
        on_stack(static_cast<size_t>(n), 0),
        comp(static_cast<size_t>(n), -1) {}

  void run() {
    for (int v = 0; v < n; ++v)
      if (index[static_cast<size_t>(v)] < 0) visit(v);
  }

  void visit(int root) {
    struct Frame {
      int v;
      int next_child;
    };
    std::vector<Frame> frames;
    begin(root);
    frames.push_back({root, 0});
    while (!frames.empty()) {
      bool descended = false;
      {
        Frame& f = frames.back();
        // successors of j are the i with a[i][j] > 0
        while (f.next_child < n) {
          int i = f.next_child++;
          if (a[static_cast<size_t>(i)][static_cast<size_t>(f.v)] == 0) continue;
          if (index[static_cast<size_t>(i)] < 0) {
            begin(i);
            frames.push_back({i, 0});  // invalidates f
            descended = true;
            break;
          }
          if (on_stack[static_cast<size_t>(i)])
            low[static_cast<size_t>(f.v)] =
                std::min(low[static_cast<size_t>(f.v)], index[static_cast<size_t>(i)]);
        }
      }
      if (descended) continue;
      int v = frames.back().v;
      frames.pop_back();
      if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
        for (;;) {
          int w = stack.back();
          stack.pop_back();
          on_stack[static_cast<size_t>(w)] = 0;
          comp[static_cast<size_t>(w)] = comp_count;
          if (w == v) break;
        }
        ++comp_count;
      }
      if (!frames.empty())
        low[static_cast<size_t>(frames.back().v)] =
            std::min(low[static_cast<size_t>(frames.back().v)], low[static_cast<size_t>(v)]);
    }
  }

  void begin(int v) {
    index[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = next_index++;
    stack.push_back(v);
    on_stack[static_cast<size_t>(v)] = 1;
  }
};

}  // namespace

Condensation scc_decompose(const IntMatrix& a) {
  check_square(a);
  int n = static_cast<int>(a.size());
  Tarjan tarjan(a);
  tarjan.run();

  // group and order components by smallest member
  std::vector<std::vector<int>> groups(static_cast<size_t>(tarjan.comp_count));
  for (int v = 0; v < n; ++v) groups[static_cast<size_t>(tarjan.comp[static_cast<size_t>(v)])].push_back(v);
  std::sort(groups.begin(), groups.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });

  Condensation c;
  c.components = std::move(groups);
  c.component_of.assign(static_cast<size_t>(n), -1);
  for (size_t ci = 0; ci < c.components.size(); ++ci)
    for (int v : c.components[ci]) c.component_of[static_cast<size_t>(v)] = static_cast<int>(ci);

  std::set<std::pair<int, int>> dag;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (a[static_cast<size_t>(i)][static_cast<size_t>(j)] > 0) {
        int cj = c.component_of[static_cast<size_t>(j)], ci = c.component_of[static_cast<size_t>(i)];
        if (cj != ci) dag.insert({cj, ci});
      }
  c.dag.assign(dag.begin(), dag.end());
  return c;
}

namespace {

struct ComponentEnclosure {
  Rat lower, upper;
  long long iterations = 0;
  bool certified = false;
};

// Collatz-Wielandt bounds for one strongly connected component. B is the
// component submatrix; the +I shift keeps the iteration primitive so the
// best-so-far bounds close in on rho(B + I) = rho(B) + 1.
ComponentEnclosure component_radius(const IntMatrix& a, const std::vector<int>& members,
                                    const Rat& tol, long long iteration_cap) {
  size_t m = members.size();
  bool all_zero = true;
  std::vector<std::vector<long long>> b(m, std::vector<long long>(m, 0));
  for (size_t r = 0; r < m; ++r)
    for (size_t c = 0; c < m; ++c) {
      b[r][c] = a[static_cast<size_t>(members[r])][static_cast<size_t>(members[c])];
      if (b[r][c] != 0) all_zero = false;
    }
  if (all_zero) return {Rat(0), Rat(0), 0, true};  // nilpotent singleton

  std::vector<BigInt> v(m, 1);
  Rat lower(0), upper;
  bool have_upper = false;
  ComponentEnclosure out;
  for (long long iter = 0; iter < iteration_cap; ++iter) {
    std::vector<BigInt> w(m, 0);
    for (size_t r = 0; r < m; ++r) {
      BigInt acc = v[r];  // the +I shift
      for (size_t c = 0; c < m; ++c)
        if (b[r][c] != 0) acc += BigInt(b[r][c]) * v[c];
      w[r] = acc;
    }
    Rat step_lo(w[0], v[0]), step_hi(w[0], v[0]);
    for (size_t r = 1; r < m; ++r) {
      Rat ratio(w[r], v[r]);
      if (ratio < step_lo) step_lo = ratio;
      if (ratio > step_hi) step_hi = ratio;
    }
    if (step_lo > lower) lower = step_lo;
    if (!have_upper || step_hi < upper) {
      upper = step_hi;
      have_upper = true;
    }
    out.iterations = iter + 1;
    if (upper - lower <= tol) {
      out.certified = true;
      break;
    }
    BigInt g = w[0];
    for (size_t r = 1; r < m; ++r) g = boost::integer::gcd(g, w[r]);
    if (g > 1)
      for (auto& x : w) x /= g;
    v = std::move(w);
  }
  out.lower = lower - 1;
  out.upper = upper - 1;
  if (out.lower < 0) out.lower = Rat(0);
  return out;
}

}  // namespace

SpectralResult spectral_radius(const IntMatrix& a, const Rat& tol, long long iteration_cap) {
  check_square(a);
  if (tol <= 0) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  if (a.empty()) throw Error(ErrorCode::InvalidArgument, "empty matrix");

  Condensation cond = scc_decompose(a);
  SpectralResult result;
  bool first = true;
  bool witness_certified = true;
  for (const auto& members : cond.components) {
    ComponentEnclosure e = component_radius(a, members, tol, iteration_cap);
    result.iterations += e.iterations;
    if (first || e.upper > result.upper) {
      result.upper = e.upper;
      result.scc_witness = members;
      witness_certified = e.certified;
    }
    if (first || e.lower > result.lower) result.lower = e.lower;
    first = false;
  }
  result.certified = witness_certified && (result.upper - result.lower <= tol);
  result.value = to_double((result.lower + result.upper) / 2);
  return result;
}

LogEnclosure dimension(const KernelPresentation& kp, const Rat& tol) {
  LogEnclosure out;
  out.base = kp.k;
  out.rho = spectral_radius(kp.matrix, tol);
  out.lower = out.rho.lower > 0 ? log_base(out.rho.lower, kp.k) : 0.0;
  out.upper = out.rho.upper > 0 ? log_base(out.rho.upper, kp.k) : 0.0;
  out.lower = std::max(0.0, out.lower);
  out.upper = std::min(static_cast<double>(kp.d), std::max(0.0, out.upper));
  if (out.lower > out.upper) out.lower = out.upper;
  out.value = (out.lower + out.upper) / 2;
  return out;
}

std::string to_json(const SpectralResult& r, int indent, int precision) {
  nlohmann::ordered_json j;
  j["lower"] = decimal_floor(r.lower, precision);
  j["upper"] = decimal_ceil(r.upper, precision);
  j["precision"] = precision;
  j["value"] = r.value;
  j["certified"] = r.certified;
  j["scc_witness"] = r.scc_witness;
  j["iterations"] = r.iterations;
  return j.dump(indent);
}

std::string to_json(const LogEnclosure& r, const std::string& quantity_name, int indent,
                    int precision) {
  nlohmann::ordered_json j;
  j["base"] = r.base;
  std::ostringstream lo, hi;
  lo.precision(precision);
  hi.precision(precision);
  lo << r.lower;
  hi << r.upper;
  j[quantity_name] = {{"value", r.value},
                      {"lower", lo.str()},
                      {"upper", hi.str()},
                      {"precision", precision}};
  j["rho"] = nlohmann::ordered_json::parse(to_json(r.rho, -1, precision + 3));
  return j.dump(indent);
}

}  // namespace selfsim

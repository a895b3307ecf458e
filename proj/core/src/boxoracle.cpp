#include "selfsim/boxoracle.hpp"

#include <algorithm>
#include <json.hpp>

namespace selfsim {

namespace {

std::vector<DigitTuple> grid_digits(int k, int d, const std::vector<std::vector<int>>& raw) {
  std::vector<DigitTuple> out;
  out.reserve(raw.size());
  for (const auto& v : raw) out.emplace_back(v);
  (void)k;
  (void)d;
  return out;
}

}  // namespace

GeometricSet builtin_set(const std::string& name) {
  if (name == "cantor")
    return {name, 3, 1, grid_digits(3, 1, {{0}, {2}})};
  if (name == "singleton-zero")
    return {name, 3, 1, grid_digits(3, 1, {{0}})};
  if (name == "cantor-square")
    return {name, 3, 2, grid_digits(3, 2, {{0, 0}, {0, 2}, {2, 0}, {2, 2}})};
  if (name == "sierpinski-carpet") {
    std::vector<std::vector<int>> b;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        if (!(x == 1 && y == 1)) b.push_back({x, y});
    return {name, 3, 2, grid_digits(3, 2, b)};
  }
  if (name == "vicsek")
    return {name, 3, 2, grid_digits(3, 2, {{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}})};
  if (name.rfind("full-cube-", 0) == 0) {
    std::string rest = name.substr(10);
    auto dash = rest.find('-');
    if (dash != std::string::npos) {
      try {
        int k = std::stoi(rest.substr(0, dash));
        int d = std::stoi(rest.substr(dash + 1));
        check_envelope(k, d);
        std::vector<DigitTuple> branches;
        for (long long code = 0; code < alphabet_size(k, d); ++code)
          branches.push_back(DigitTuple::from_code(static_cast<int>(code), k, d));
        return {name, k, d, branches};
      } catch (const std::invalid_argument&) {
      } catch (const std::out_of_range&) {
      }
    }
  }
  throw Error(ErrorCode::UnknownSet, "unknown built-in set '" + name + "'");
}

std::vector<std::string> builtin_names() {
  return {"cantor",  "singleton-zero",    "cantor-square",
          "vicsek",  "sierpinski-carpet", "full-cube-2-1",
          "full-cube-2-2"};
}

BoxOracle::BoxOracle(GeometricSet set) : set_(std::move(set)) {
  check_envelope(set_.k, set_.d);
  if (set_.branches.empty())
    throw Error(ErrorCode::InvalidArgument, "geometric set needs at least one branch");
  for (const DigitTuple& b : set_.branches)
    if (!b.valid_for(set_.k, set_.d))
      throw Error(ErrorCode::DigitRange, "branch digits invalid for (k,d)");
}

size_t BoxOracle::BoxHash::operator()(const Box& b) const {
  size_t h = 1469598103934665603ull;
  auto mix = [&h](long long v) {
    h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  mix(b.den);
  for (auto [lo, hi] : b.c) {
    mix(lo);
    mix(hi);
  }
  return h;
}

BoxOracle::Box BoxOracle::reduce(long long den, std::vector<std::pair<long long, long long>> c) const {
  // divide out common powers of k so memo entries are shared across depths
  while (den > 1) {
    bool divisible = den % set_.k == 0;
    for (auto [lo, hi] : c)
      if (lo % set_.k != 0 || hi % set_.k != 0) divisible = false;
    if (!divisible) break;
    den /= set_.k;
    for (auto& [lo, hi] : c) {
      lo /= set_.k;
      hi /= set_.k;
    }
  }
  return Box{den, std::move(c)};
}

bool BoxOracle::meets_box(const Box& box) {
  auto it = memo_.find(box);
  if (it != memo_.end()) {
    if (it->second == 2) return true;  // back-edge: an infinite chain exists
    return it->second == 1;
  }
  // full unit cube always meets (the attractor is nonempty)
  bool full = true;
  for (auto [lo, hi] : box.c)
    if (lo != 0 || hi != box.den) full = false;
  if (full) {
    memo_[box] = 1;
    return true;
  }

  memo_[box] = 2;  // on stack
  bool result = false;
  for (const DigitTuple& b : set_.branches) {
    // preimage under x -> (x + b)/k is y -> k*y - b: the box grows by k and
    // keeps its denominator; clip to the unit cube
    std::vector<std::pair<long long, long long>> pre(box.c.size());
    bool nonempty = true;
    long long den = box.den;
    for (size_t i = 0; i < box.c.size(); ++i) {
      long long lo = box.c[i].first * set_.k - b[static_cast<int>(i)] * den;
      long long hi = box.c[i].second * set_.k - b[static_cast<int>(i)] * den;
      lo = std::max(lo, 0LL);
      hi = std::min(hi, den);
      if (lo > hi) {
        nonempty = false;
        break;
      }
      pre[i] = {lo, hi};
    }
    if (!nonempty) continue;
    if (meets_box(reduce(den, std::move(pre)))) {
      result = true;
      break;
    }
  }
  memo_[box] = result ? 1 : 0;
  return result;
}

bool BoxOracle::meets(const std::vector<long long>& lo, const std::vector<long long>& hi, int level) {
  if (static_cast<int>(lo.size()) != set_.d || static_cast<int>(hi.size()) != set_.d)
    throw Error(ErrorCode::InvalidArgument, "box dimension mismatch");
  long long den = 1;
  for (int i = 0; i < level; ++i) den *= set_.k;
  std::vector<std::pair<long long, long long>> c(static_cast<size_t>(set_.d));
  for (size_t i = 0; i < c.size(); ++i) {
    if (lo[i] < 0 || hi[i] > den || lo[i] > hi[i])
      throw Error(ErrorCode::InvalidArgument, "box outside the unit cube");
    c[i] = {lo[i], hi[i]};
  }
  return meets_box(reduce(den, std::move(c)));
}

BigInt BoxOracle::count_rec(std::vector<long long>& pos, int level, int p, long long budget,
                            long long& used) {
  long long den = 1;
  for (int i = 0; i < level; ++i) den *= set_.k;
  std::vector<std::pair<long long, long long>> c(pos.size());
  for (size_t i = 0; i < pos.size(); ++i) c[i] = {pos[i], pos[i] + 1};
  if (!meets_box(reduce(den, std::move(c)))) return 0;
  if (level == p) {
    if (++used > budget)
      throw Error(ErrorCode::BudgetExceeded, "box count exceeds budget " + std::to_string(budget));
    return 1;
  }
  BigInt total = 0;
  long long cells = alphabet_size(set_.k, set_.d);
  for (long long code = 0; code < cells; ++code) {
    DigitTuple b = DigitTuple::from_code(static_cast<int>(code), set_.k, set_.d);
    std::vector<long long> child(pos.size());
    for (size_t i = 0; i < pos.size(); ++i) child[i] = pos[i] * set_.k + b[static_cast<int>(i)];
    total += count_rec(child, level + 1, p, budget, used);
  }
  return total;
}

BoxCount BoxOracle::count_boxes(int p, long long budget) {
  if (p < 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 0");
  std::vector<long long> origin(static_cast<size_t>(set_.d), 0);
  long long used = 0;
  BoxCount out;
  out.p = p;
  out.count = count_rec(origin, 0, p, budget, used);
  return out;
}

BoxEstimate box_dimension_estimate(BoxOracle& oracle, int p, long long budget) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "estimator depth must be >= 1");
  BigInt now = oracle.count_boxes(p, budget).count;
  BigInt next = oracle.count_boxes(p + 1, budget).count;
  BoxEstimate e;
  e.direct = log_base(now, oracle.set().k) / p;
  e.ratio = log_base(Rat(next, now), oracle.set().k);
  return e;
}

std::string corpus_manifest_json(int indent) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const std::string& name : builtin_names()) {
    GeometricSet s = builtin_set(name);
    nlohmann::ordered_json entry;
    entry["name"] = s.name;
    entry["k"] = s.k;
    entry["d"] = s.d;
    nlohmann::ordered_json branches = nlohmann::ordered_json::array();
    for (const DigitTuple& b : s.branches) branches.push_back(b.to_vector());
    entry["branches"] = branches;
    j.push_back(entry);
  }
  return j.dump(indent);
}

}  // namespace selfsim

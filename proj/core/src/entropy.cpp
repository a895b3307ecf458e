#include "selfsim/entropy.hpp"

#include <deque>
#include <json.hpp>
#include <map>
#include <set>

namespace selfsim {

CountingAutomaton counting_automaton(const KernelPresentation& kp) {
  CountingAutomaton ca;
  ca.k = kp.k;
  ca.d = kp.d;

  std::map<std::vector<int>, int> ids;
  std::deque<int> queue;
  auto intern = [&](std::vector<int> subset) {
    auto [it, inserted] = ids.emplace(std::move(subset), static_cast<int>(ca.subsets.size()));
    if (inserted) {
      ca.subsets.push_back(it->first);
      ca.delta.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };

  std::vector<int> all(static_cast<size_t>(kp.size()));
  for (int i = 0; i < kp.size(); ++i) all[static_cast<size_t>(i)] = i;
  ca.start = intern(all);

  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    std::map<int, std::set<int>> images;
    for (int j : ca.subsets[static_cast<size_t>(id)])
      for (const auto& [sym, target] : kp.table[static_cast<size_t>(j)]) images[sym].insert(target);
    for (const auto& [sym, image] : images)
      ca.delta[static_cast<size_t>(id)][sym] = intern(std::vector<int>(image.begin(), image.end()));
  }

  int m = static_cast<int>(ca.subsets.size());
  ca.transfer.assign(static_cast<size_t>(m), std::vector<long long>(static_cast<size_t>(m), 0));
  for (int s = 0; s < m; ++s)
    for (const auto& [sym, t] : ca.delta[static_cast<size_t>(s)])
      ca.transfer[static_cast<size_t>(s)][static_cast<size_t>(t)] += 1;
  return ca;
}

BigInt cube_count(const KernelPresentation& kp, int element, int p) {
  if (element < 0 || element >= kp.size())
    throw Error(ErrorCode::InvalidArgument, "element index out of range");
  if (p < 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 0");
  int n = kp.size();
  std::vector<BigInt> v(static_cast<size_t>(n), 0);
  v[static_cast<size_t>(element)] = 1;
  for (int step = 0; step < p; ++step) {
    std::vector<BigInt> w(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
      BigInt acc = 0;
      for (int j = 0; j < n; ++j)
        if (kp.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0 && v[static_cast<size_t>(j)] != 0)
          acc += BigInt(kp.matrix[static_cast<size_t>(i)][static_cast<size_t>(j)]) * v[static_cast<size_t>(j)];
      w[static_cast<size_t>(i)] = acc;
    }
    v = std::move(w);
  }
  BigInt total = 0;
  for (const BigInt& x : v) total += x;
  return total;
}

BigInt word_count(const CountingAutomaton& ca, int p) {
  if (p < 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 0");
  int m = static_cast<int>(ca.transfer.size());
  std::vector<BigInt> v(static_cast<size_t>(m), 0);
  v[static_cast<size_t>(ca.start)] = 1;
  for (int step = 0; step < p; ++step) {
    std::vector<BigInt> w(static_cast<size_t>(m), 0);
    for (int s = 0; s < m; ++s) {
      if (v[static_cast<size_t>(s)] == 0) continue;
      for (int t = 0; t < m; ++t)
        if (ca.transfer[static_cast<size_t>(s)][static_cast<size_t>(t)] != 0)
          w[static_cast<size_t>(t)] +=
              v[static_cast<size_t>(s)] * ca.transfer[static_cast<size_t>(s)][static_cast<size_t>(t)];
    }
    v = std::move(w);
  }
  BigInt total = 0;
  for (const BigInt& x : v) total += x;
  return total;
}

BigInt word_count(const KernelPresentation& kp, int p) {
  return word_count(counting_automaton(kp), p);
}

BigInt prefix_count(const DeterministicAutomaton& a, int p) {
  if (p < 0) throw Error(ErrorCode::InvalidArgument, "depth must be >= 0");
  int n = a.state_count();
  std::vector<BigInt> v(static_cast<size_t>(n), 0);
  v[static_cast<size_t>(a.initial())] = 1;
  for (int step = 0; step < p; ++step) {
    std::vector<BigInt> w(static_cast<size_t>(n), 0);
    for (int s = 0; s < n; ++s) {
      if (v[static_cast<size_t>(s)] == 0) continue;
      for (const auto& [sym, t] : a.transitions_from(s)) w[static_cast<size_t>(t)] += v[static_cast<size_t>(s)];
    }
    v = std::move(w);
  }
  BigInt total = 0;
  for (const BigInt& x : v) total += x;
  return total;
}

CountReport count_report(const KernelPresentation& kp, int p) {
  CountReport r;
  r.p = p;
  CountingAutomaton ca = counting_automaton(kp);
  r.total = word_count(ca, p);
  for (int i = 0; i < kp.size(); ++i) r.per_element.push_back(cube_count(kp, i, p));
  if (p >= 1) {
    BigInt next = word_count(ca, p + 1);
    r.estimator = log_base(Rat(next, r.total), kp.k);
  }
  return r;
}

EstimatePair entropy_estimate(const KernelPresentation& kp, int p) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "estimator depth must be >= 1");
  CountingAutomaton ca = counting_automaton(kp);
  BigInt now = word_count(ca, p);
  BigInt next = word_count(ca, p + 1);
  EstimatePair e;
  e.direct = log_base(now, kp.k) / p;
  e.ratio = log_base(Rat(next, now), kp.k);
  return e;
}

LogEnclosure entropy(const KernelPresentation& kp, const Rat& tol) {
  LogEnclosure out = dimension(kp, tol);  // Proposition-2: same certified machinery
  return out;
}

namespace {

LogEnclosure log_of_transfer(const CountingAutomaton& ca, int k, int d, const Rat& tol) {
  LogEnclosure out;
  out.base = k;
  out.rho = spectral_radius(ca.transfer, tol);
  out.lower = out.rho.lower > 0 ? log_base(out.rho.lower, k) : 0.0;
  out.upper = out.rho.upper > 0 ? log_base(out.rho.upper, k) : 0.0;
  out.lower = std::max(0.0, out.lower);
  out.upper = std::min(static_cast<double>(d), std::max(0.0, out.upper));
  if (out.lower > out.upper) out.lower = out.upper;
  out.value = (out.lower + out.upper) / 2;
  return out;
}

}  // namespace

TheoremReport verify_theorem(const KernelPresentation& kp, const Rat& tol, int diagnostic_depth) {
  TheoremReport r;
  r.dim = dimension(kp, tol);
  CountingAutomaton ca = counting_automaton(kp);
  r.ent_transfer = log_of_transfer(ca, kp.k, kp.d, tol);

  // exact intersection test on the rho intervals (same log base)
  r.enclosures_intersect = !(r.dim.rho.upper < r.ent_transfer.rho.lower ||
                             r.ent_transfer.rho.upper < r.dim.rho.lower);
  if (!r.enclosures_intersect)
    r.violated = "rho(A) enclosure disjoint from rho(transfer) enclosure";

  r.sandwich_depth = diagnostic_depth;
  r.sandwich_ok = true;
  BigInt n(kp.size());
  for (int p = 0; p <= diagnostic_depth && r.sandwich_ok; ++p) {
    BigInt total = word_count(ca, p);
    BigInt max_i = 0, sum_i = 0;
    for (int i = 0; i < kp.size(); ++i) {
      BigInt c = cube_count(kp, i, p);
      if (c > max_i) max_i = c;
      sum_i += c;
    }
    if (!(max_i <= total && total <= sum_i && sum_i <= n * max_i)) {
      r.sandwich_ok = false;
      r.violated = "sandwich max_i <= P <= sum_i <= n*max_i violated at p=" + std::to_string(p);
    }
  }
  if (diagnostic_depth >= 1) r.estimate = entropy_estimate(kp, diagnostic_depth);
  r.pass = r.enclosures_intersect && r.sandwich_ok && r.dim.rho.certified &&
           r.ent_transfer.rho.certified;
  if (r.pass) r.violated.clear();
  else if (r.violated.empty()) r.violated = "rho enclosure not certified at requested tolerance";
  return r;
}

std::string to_json(const TheoremReport& r, int indent) {
  nlohmann::ordered_json j;
  j["dimension"] = nlohmann::ordered_json::parse(to_json(r.dim, "dimension"));
  j["entropy_transfer"] = nlohmann::ordered_json::parse(to_json(r.ent_transfer, "entropy"));
  j["enclosures_intersect"] = r.enclosures_intersect;
  j["sandwich_ok"] = r.sandwich_ok;
  j["sandwich_depth"] = r.sandwich_depth;
  j["estimator_direct"] = r.estimate.direct;
  j["estimator_ratio"] = r.estimate.ratio;
  j["pass"] = r.pass;
  if (!r.violated.empty()) j["violated"] = r.violated;
  return j.dump(indent);
}

}  // namespace selfsim

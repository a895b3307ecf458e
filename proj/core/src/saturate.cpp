#include "selfsim/saturate.hpp"

#include <deque>
#include <map>
#include <set>

namespace selfsim {

CarryTransducer::CarryTransducer(int k, int d) : k_(k), d_(d) { check_envelope(k, d); }

int CarryTransducer::state_count() const {
  int n = 1;
  for (int i = 0; i < d_; ++i) n *= 3;
  return n;
}

int CarryTransducer::step_coord(int status, int k, int u, int v) {
  switch (status) {
    case kEqual:
      if (v == u) return kEqual;
      if (v == u + 1) return kLeftLow;   // left reads a, right a+1: left tail k-1, right tail 0
      if (v == u - 1) return kLeftHigh;  // mirror
      return -1;
    case kLeftLow:
      return (u == k - 1 && v == 0) ? kLeftLow : -1;
    case kLeftHigh:
      return (u == 0 && v == k - 1) ? kLeftHigh : -1;
    default:
      return -1;
  }
}

std::vector<std::pair<int, int>> CarryTransducer::outputs(int state, int u_code) const {
  // decode status vector and input letter
  int status[kMaxDim];
  int st = state;
  for (int i = d_ - 1; i >= 0; --i) {
    status[i] = st % 3;
    st /= 3;
  }
  DigitTuple u = DigitTuple::from_code(u_code, k_, d_);

  // per coordinate: list of (v_i, status') options
  std::vector<std::pair<int, int>> per_coord[kMaxDim];
  for (int i = 0; i < d_; ++i) {
    int ui = u[i];
    switch (status[i]) {
      case kEqual:
        per_coord[i].push_back({ui, kEqual});
        if (ui + 1 < k_) per_coord[i].push_back({ui + 1, kLeftLow});
        if (ui - 1 >= 0) per_coord[i].push_back({ui - 1, kLeftHigh});
        break;
      case kLeftLow:
        if (ui == k_ - 1) per_coord[i].push_back({0, kLeftLow});
        break;
      case kLeftHigh:
        if (ui == 0) per_coord[i].push_back({k_ - 1, kLeftHigh});
        break;
    }
    if (per_coord[i].empty()) return {};
  }

  std::vector<std::pair<int, int>> result;
  std::vector<size_t> choice(static_cast<size_t>(d_), 0);
  for (;;) {
    int v_code = 0, next_state = 0;
    for (int i = 0; i < d_; ++i) {
      auto [vi, si] = per_coord[i][choice[static_cast<size_t>(i)]];
      v_code = v_code * k_ + vi;
      next_state = next_state * 3 + si;
    }
    result.push_back({v_code, next_state});
    int i = d_ - 1;
    while (i >= 0 && ++choice[static_cast<size_t>(i)] == per_coord[i].size()) {
      choice[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return result;
}

bool CarryTransducer::accepts_pair(const std::vector<DigitTuple>& u,
                                   const std::vector<DigitTuple>& v) const {
  if (u.size() != v.size()) return false;
  std::set<int> states = {start()};
  for (size_t t = 0; t < u.size(); ++t) {
    std::set<int> next;
    for (int s : states)
      for (auto [v_code, s2] : outputs(s, u[t].code(k_)))
        if (v_code == v[t].code(k_)) next.insert(s2);
    states = std::move(next);
    if (states.empty()) return false;
  }
  return true;
}

CarryTransducer carry_transducer(int k, int d) { return CarryTransducer(k, d); }

SaturatedAutomaton saturate(const SetAutomaton& input, long long state_budget) {
  SetAutomaton a = input.is_trim() ? input : trim(input);
  CarryTransducer tr(a.k(), a.d());

  // product state = (transducer state, automaton state)
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> queue;
  std::vector<int> initial;
  auto intern = [&](std::pair<int, int> p) {
    auto [it, inserted] = ids.emplace(p, static_cast<int>(ids.size()));
    if (inserted) {
      if (static_cast<long long>(ids.size()) > state_budget)
        throw Error(ErrorCode::BudgetExceeded, "saturation product exceeds state budget");
      queue.push_back(p);
    }
    return it->second;
  };
  for (int s : a.initial()) initial.push_back(intern({tr.start(), s}));

  std::vector<Edge> edges;
  while (!queue.empty()) {
    auto [t, s] = queue.front();
    queue.pop_front();
    int from = ids.at({t, s});
    for (const auto& [u_code, targets] : a.transitions_from(s)) {
      for (auto [v_code, t2] : tr.outputs(t, u_code)) {
        DigitTuple v = DigitTuple::from_code(v_code, a.k(), a.d());
        for (int s2 : targets) edges.push_back({from, v, intern({t2, s2})});
      }
    }
  }

  SetAutomaton product(a.k(), a.d(), static_cast<int>(ids.size()), initial, edges);
  return SaturatedAutomaton(trim(product));
}

bool is_saturated(const SetAutomaton& a) {
  DeterministicAutomaton lhs = minimize(determinize(a));
  DeterministicAutomaton rhs = minimize(determinize(saturate(a).automaton()));
  return language_equal(lhs, rhs);
}

}  // namespace selfsim

#include "selfsim/automaton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace selfsim {

SetAutomaton::SetAutomaton(int k, int d, int state_count, std::vector<int> initial,
                           const std::vector<Edge>& edges)
    : k_(k), d_(d), initial_(std::move(initial)) {
  check_envelope(k, d);
  if (state_count < 0) throw Error(ErrorCode::InvalidAutomaton, "negative state count");
  delta_.resize(static_cast<size_t>(state_count));
  std::sort(initial_.begin(), initial_.end());
  initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
  if (initial_.empty()) throw Error(ErrorCode::InvalidAutomaton, "no initial state");
  for (int s : initial_)
    if (s < 0 || s >= state_count)
      throw Error(ErrorCode::UnknownState, "initial state " + std::to_string(s) + " not declared");
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= state_count || e.to < 0 || e.to >= state_count)
      throw Error(ErrorCode::UnknownState, "edge references undeclared state");
    if (!e.digits.valid_for(k, d)) {
      if (e.digits.dim() != d)
        throw Error(ErrorCode::ArityMismatch, "edge label has " + std::to_string(e.digits.dim()) +
                                                  " digits, expected " + std::to_string(d));
      throw Error(ErrorCode::DigitRange, "edge digit outside [0," + std::to_string(k) + ")");
    }
    auto& targets = delta_[static_cast<size_t>(e.from)][e.digits.code(k)];
    targets.push_back(e.to);
  }
  for (auto& row : delta_) {
    for (auto& [sym, targets] : row) {
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    }
  }
}

std::vector<Edge> SetAutomaton::edges() const {
  std::vector<Edge> out;
  for (int s = 0; s < state_count(); ++s)
    for (const auto& [sym, targets] : delta_[static_cast<size_t>(s)])
      for (int t : targets) out.push_back({s, DigitTuple::from_code(sym, k_, d_), t});
  return out;
}

SetAutomaton SetAutomaton::single_state(int k, int d, const std::vector<DigitTuple>& loops) {
  std::vector<Edge> edges;
  edges.reserve(loops.size());
  for (const DigitTuple& t : loops) edges.push_back({0, t, 0});
  return SetAutomaton(k, d, 1, {0}, edges);
}

namespace {

// Greatest fixpoint of "has an outgoing edge into the live set", then
// reachability from the initial states through live states only.
std::vector<bool> trim_mask(int n, const std::vector<int>& initial,
                            const std::function<void(int, const std::function<void(int)>&)>& for_targets) {
  std::vector<bool> live(static_cast<size_t>(n), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s) {
      if (!live[static_cast<size_t>(s)]) continue;
      bool has = false;
      for_targets(s, [&](int t) {
        if (live[static_cast<size_t>(t)]) has = true;
      });
      if (!has) {
        live[static_cast<size_t>(s)] = false;
        changed = true;
      }
    }
  }
  std::vector<bool> keep(static_cast<size_t>(n), false);
  std::deque<int> queue;
  for (int s : initial)
    if (live[static_cast<size_t>(s)]) {
      keep[static_cast<size_t>(s)] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for_targets(s, [&](int t) {
      if (live[static_cast<size_t>(t)] && !keep[static_cast<size_t>(t)]) {
        keep[static_cast<size_t>(t)] = true;
        queue.push_back(t);
      }
    });
  }
  return keep;
}

}  // namespace

SetAutomaton trim(const SetAutomaton& a, std::vector<int>* old_to_new) {
  int n = a.state_count();
  auto keep = trim_mask(n, a.initial(), [&](int s, const std::function<void(int)>& f) {
    for (const auto& [sym, targets] : a.transitions_from(s))
      for (int t : targets) f(t);
  });
  std::vector<int> remap(static_cast<size_t>(n), -1);
  int next_id = 0;
  for (int s = 0; s < n; ++s)
    if (keep[static_cast<size_t>(s)]) remap[static_cast<size_t>(s)] = next_id++;
  if (old_to_new) *old_to_new = remap;
  if (next_id == 0) throw Error(ErrorCode::EmptySet, "automaton names the empty set");

  std::vector<Edge> edges;
  for (int s = 0; s < n; ++s) {
    if (remap[static_cast<size_t>(s)] < 0) continue;
    for (const auto& [sym, targets] : a.transitions_from(s))
      for (int t : targets)
        if (remap[static_cast<size_t>(t)] >= 0)
          edges.push_back({remap[static_cast<size_t>(s)], DigitTuple::from_code(sym, a.k(), a.d()),
                           remap[static_cast<size_t>(t)]});
  }
  std::vector<int> initial;
  for (int s : a.initial())
    if (remap[static_cast<size_t>(s)] >= 0) initial.push_back(remap[static_cast<size_t>(s)]);
  return SetAutomaton(a.k(), a.d(), next_id, initial, edges);
}

bool SetAutomaton::is_trim() const {
  int n = state_count();
  auto keep = trim_mask(n, initial_, [&](int s, const std::function<void(int)>& f) {
    for (const auto& [sym, targets] : delta_[static_cast<size_t>(s)])
      for (int t : targets) f(t);
  });
  for (int s = 0; s < n; ++s)
    if (!keep[static_cast<size_t>(s)]) return false;
  return true;
}

DeterministicAutomaton::DeterministicAutomaton(int k, int d, int state_count, int initial,
                                               std::vector<std::map<int, int>> delta)
    : k_(k), d_(d), initial_(initial), delta_(std::move(delta)) {
  check_envelope(k, d);
  if (static_cast<int>(delta_.size()) != state_count)
    throw Error(ErrorCode::InvalidAutomaton, "transition table size mismatch");
  if (initial_ < 0 || initial_ >= state_count)
    throw Error(ErrorCode::UnknownState, "initial state out of range");
}

int DeterministicAutomaton::next(int state, int symbol) const {
  const auto& row = delta_[static_cast<size_t>(state)];
  auto it = row.find(symbol);
  return it == row.end() ? -1 : it->second;
}

SetAutomaton DeterministicAutomaton::to_set_automaton() const {
  std::vector<Edge> edges;
  for (int s = 0; s < state_count(); ++s)
    for (const auto& [sym, t] : delta_[static_cast<size_t>(s)])
      edges.push_back({s, DigitTuple::from_code(sym, k_, d_), t});
  return SetAutomaton(k_, d_, state_count(), {initial_}, edges);
}

DeterministicAutomaton trim(const DeterministicAutomaton& a) {
  int n = a.state_count();
  auto keep = trim_mask(n, {a.initial()}, [&](int s, const std::function<void(int)>& f) {
    for (const auto& [sym, t] : a.transitions_from(s)) f(t);
  });
  std::vector<int> remap(static_cast<size_t>(n), -1);
  int next_id = 0;
  for (int s = 0; s < n; ++s)
    if (keep[static_cast<size_t>(s)]) remap[static_cast<size_t>(s)] = next_id++;
  if (next_id == 0) throw Error(ErrorCode::EmptySet, "automaton names the empty set");
  std::vector<std::map<int, int>> delta(static_cast<size_t>(next_id));
  for (int s = 0; s < n; ++s) {
    if (remap[static_cast<size_t>(s)] < 0) continue;
    for (const auto& [sym, t] : a.transitions_from(s))
      if (remap[static_cast<size_t>(t)] >= 0)
        delta[static_cast<size_t>(remap[static_cast<size_t>(s)])][sym] = remap[static_cast<size_t>(t)];
  }
  return DeterministicAutomaton(a.k(), a.d(), next_id, remap[static_cast<size_t>(a.initial())], delta);
}

DeterministicAutomaton determinize(const SetAutomaton& input) {
  SetAutomaton a = input.is_trim() ? input : trim(input);
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> subsets;
  std::vector<std::map<int, int>> delta;
  std::deque<int> queue;

  auto intern = [&](std::vector<int> subset) {
    auto [it, inserted] = ids.emplace(std::move(subset), static_cast<int>(subsets.size()));
    if (inserted) {
      subsets.push_back(it->first);
      delta.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };

  intern(a.initial());
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    std::map<int, std::set<int>> images;
    for (int s : subsets[static_cast<size_t>(id)])
      for (const auto& [sym, targets] : a.transitions_from(s))
        images[sym].insert(targets.begin(), targets.end());
    for (const auto& [sym, image] : images)
      delta[static_cast<size_t>(id)][sym] = intern(std::vector<int>(image.begin(), image.end()));
  }
  return DeterministicAutomaton(a.k(), a.d(), static_cast<int>(delta.size()), 0, delta);
}

namespace {

// Breadth-first renumbering with symbols ascending; the canonical order for
// serialization and equality of minimal automata.
DeterministicAutomaton bfs_renumber(const DeterministicAutomaton& a) {
  int n = a.state_count();
  std::vector<int> remap(static_cast<size_t>(n), -1);
  std::deque<int> queue;
  remap[static_cast<size_t>(a.initial())] = 0;
  queue.push_back(a.initial());
  int next_id = 1;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (const auto& [sym, t] : a.transitions_from(s)) {
      if (remap[static_cast<size_t>(t)] < 0) {
        remap[static_cast<size_t>(t)] = next_id++;
        queue.push_back(t);
      }
    }
  }
  std::vector<std::map<int, int>> delta(static_cast<size_t>(next_id));
  for (int s = 0; s < n; ++s) {
    if (remap[static_cast<size_t>(s)] < 0) continue;  // unreachable
    for (const auto& [sym, t] : a.transitions_from(s))
      delta[static_cast<size_t>(remap[static_cast<size_t>(s)])][sym] = remap[static_cast<size_t>(t)];
  }
  return DeterministicAutomaton(a.k(), a.d(), next_id, 0, delta);
}

}  // namespace

DeterministicAutomaton minimize(const DeterministicAutomaton& a) {
  // Moore refinement. All states accept, so the initial partition is a single
  // block and refinement splits on outgoing (symbol -> block) signatures,
  // with missing transitions acting as a distinguished sink.
  int n = a.state_count();
  std::vector<int> block(static_cast<size_t>(n), 0);
  int block_count = 1;
  for (;;) {
    std::map<std::pair<int, std::vector<std::pair<int, int>>>, int> sig_ids;
    std::vector<int> next_block(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) {
      std::vector<std::pair<int, int>> sig;
      for (const auto& [sym, t] : a.transitions_from(s))
        sig.emplace_back(sym, block[static_cast<size_t>(t)]);
      auto key = std::make_pair(block[static_cast<size_t>(s)], std::move(sig));
      auto [it, inserted] = sig_ids.emplace(std::move(key), static_cast<int>(sig_ids.size()));
      next_block[static_cast<size_t>(s)] = it->second;
    }
    int next_count = static_cast<int>(sig_ids.size());
    block = std::move(next_block);
    if (next_count == block_count) break;
    block_count = next_count;
  }
  std::vector<std::map<int, int>> delta(static_cast<size_t>(block_count));
  for (int s = 0; s < n; ++s)
    for (const auto& [sym, t] : a.transitions_from(s))
      delta[static_cast<size_t>(block[static_cast<size_t>(s)])][sym] = block[static_cast<size_t>(t)];
  DeterministicAutomaton quotient(a.k(), a.d(), block_count, block[static_cast<size_t>(a.initial())],
                                  std::move(delta));
  return bfs_renumber(quotient);
}

std::string canonical_key(const DeterministicAutomaton& a) {
  std::ostringstream os;
  os << "k" << a.k() << "d" << a.d() << "n" << a.state_count() << "i" << a.initial() << ";";
  for (int s = 0; s < a.state_count(); ++s) {
    os << s << ":";
    for (const auto& [sym, t] : a.transitions_from(s)) os << sym << ">" << t << ",";
    os << ";";
  }
  return os.str();
}

bool language_equal(const DeterministicAutomaton& a, const DeterministicAutomaton& b) {
  if (a.k() != b.k() || a.d() != b.d())
    throw Error(ErrorCode::BaseMismatch, "automata disagree on (k, d)");
  return canonical_key(minimize(a)) == canonical_key(minimize(b));
}

DeterministicAutomaton rooted_subautomaton(const DeterministicAutomaton& a, int root) {
  if (root < 0 || root >= a.state_count())
    throw Error(ErrorCode::UnknownState, "quotient root out of range");
  DeterministicAutomaton rerooted(a.k(), a.d(), a.state_count(), root,
                                  [&] {
                                    std::vector<std::map<int, int>> delta;
                                    delta.reserve(static_cast<size_t>(a.state_count()));
                                    for (int s = 0; s < a.state_count(); ++s)
                                      delta.push_back(a.transitions_from(s));
                                    return delta;
                                  }());
  return bfs_renumber(rerooted);
}

}  // namespace selfsim

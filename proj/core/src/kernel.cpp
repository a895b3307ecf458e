#include "selfsim/kernel.hpp"

#include <deque>
#include <unordered_map>

namespace selfsim {

int KernelPresentation::transition(int element, const DigitTuple& digit) const {
  const auto& row = table[static_cast<size_t>(element)];
  auto it = row.find(digit.code(k));
  return it == row.end() ? -1 : it->second;
}

DeterministicAutomaton digit_quotient(const DeterministicAutomaton& element, const DigitTuple& digit) {
  int root = element.next(element.initial(), digit.code(element.k()));
  if (root < 0) throw Error(ErrorCode::EmptySet, "empty digit quotient");
  return minimize(rooted_subautomaton(element, root));
}

KernelPresentation compute_kernel(const SaturatedAutomaton& a, const KernelOptions& opts) {
  KernelPresentation kp;
  kp.k = a.automaton().k();
  kp.d = a.automaton().d();

  std::unordered_map<std::string, int> keys;
  std::deque<int> queue;
  auto intern = [&](DeterministicAutomaton dfa) {
    std::string key = canonical_key(dfa);
    auto it = keys.find(key);
    if (it != keys.end()) return it->second;
    int id = static_cast<int>(kp.elements.size());
    if (static_cast<long long>(id) >= opts.element_cap)
      throw Error(ErrorCode::KernelOverflow,
                  "kernel exceeds element cap " + std::to_string(opts.element_cap));
    keys.emplace(std::move(key), id);
    kp.elements.push_back(std::move(dfa));
    kp.labels.push_back("X" + std::to_string(id));
    kp.table.emplace_back();
    queue.push_back(id);
    return id;
  };

  intern(minimize(determinize(a.automaton())));
  while (!queue.empty()) {
    int j = queue.front();
    queue.pop_front();
    // copy the root row: intern() may grow kp.elements while we iterate
    const std::map<int, int> row = kp.elements[static_cast<size_t>(j)].transitions_from(
        kp.elements[static_cast<size_t>(j)].initial());
    for (const auto& [sym, target] : row) {
      DeterministicAutomaton quotient =
          minimize(rooted_subautomaton(kp.elements[static_cast<size_t>(j)], target));
      kp.table[static_cast<size_t>(j)][sym] = intern(std::move(quotient));
    }
  }

  kp.matrix = subdivision_matrix(kp);
  return kp;
}

std::vector<std::vector<long long>> subdivision_matrix(const KernelPresentation& kp) {
  int n = kp.size();
  std::vector<std::vector<long long>> a(static_cast<size_t>(n),
                                        std::vector<long long>(static_cast<size_t>(n), 0));
  for (int j = 0; j < n; ++j)
    for (const auto& [sym, i] : kp.table[static_cast<size_t>(j)])
      a[static_cast<size_t>(i)][static_cast<size_t>(j)] += 1;
  return a;
}

SetAutomaton rebase_raw(const SetAutomaton& input, int exponent) {
  if (exponent < 1) throw Error(ErrorCode::InvalidArgument, "rebase exponent must be >= 1");
  int k = input.k(), d = input.d();
  long long big_base = 1;
  for (int i = 0; i < exponent; ++i) {
    big_base *= k;
    if (big_base > kMaxBase)
      throw Error(ErrorCode::BaseOverflow,
                  "base " + std::to_string(k) + "^" + std::to_string(exponent) +
                      " exceeds the supported envelope");
  }
  if (exponent == 1) return input;
  int K = static_cast<int>(big_base);

  SetAutomaton a = input.is_trim() ? input : trim(input);
  std::vector<Edge> edges;
  // enumerate e-step paths from every state, combining digits positionally
  struct Frame {
    int state;
    int depth;
    std::vector<int> value;  // per-coordinate accumulated super-digit
  };
  for (int s = 0; s < a.state_count(); ++s) {
    std::deque<Frame> stack;
    stack.push_back({s, 0, std::vector<int>(static_cast<size_t>(d), 0)});
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      if (f.depth == exponent) {
        edges.push_back({s, DigitTuple(f.value), f.state});
        continue;
      }
      for (const auto& [sym, targets] : a.transitions_from(f.state)) {
        DigitTuple b = DigitTuple::from_code(sym, k, d);
        std::vector<int> value = f.value;
        for (int i = 0; i < d; ++i) value[static_cast<size_t>(i)] = value[static_cast<size_t>(i)] * k + b[i];
        for (int t : targets) stack.push_back({t, f.depth + 1, value});
      }
    }
  }
  SetAutomaton rebased(K, d, a.state_count(), a.initial(), edges);
  return trim(rebased);
}

SaturatedAutomaton rebase(const SaturatedAutomaton& a, int exponent) {
  // regrouping digits is a bijection on expansions, so saturation is preserved
  return SaturatedAutomaton(rebase_raw(a.automaton(), exponent));
}

}  // namespace selfsim

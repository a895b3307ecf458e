#include <json.hpp>

#include "selfsim/automaton.hpp"
#include "selfsim/kernel.hpp"

namespace selfsim {

using json = nlohmann::ordered_json;

namespace {

json automaton_to_value(const SetAutomaton& a) {
  json j;
  j["k"] = a.k();
  j["d"] = a.d();
  json states = json::array();
  for (int s = 0; s < a.state_count(); ++s) states.push_back(s);
  j["states"] = states;
  j["initial"] = a.initial();
  json edges = json::array();
  for (const Edge& e : a.edges()) {
    json je;
    je["from"] = e.from;
    je["digits"] = e.digits.to_vector();
    je["to"] = e.to;
    edges.push_back(je);
  }
  j["edges"] = edges;
  return j;
}

}  // namespace

std::string to_json(const SetAutomaton& a, int indent) {
  return automaton_to_value(a).dump(indent);
}

SetAutomaton set_automaton_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("bad JSON: ") + e.what());
  }
  try {
    int k = j.at("k").get<int>();
    int d = j.at("d").get<int>();
    std::map<long long, int> remap;  // arbitrary integer ids -> dense ids
    for (const auto& s : j.at("states")) {
      long long id = s.get<long long>();
      if (remap.count(id)) throw Error(ErrorCode::DuplicateState, "state " + std::to_string(id));
      remap.emplace(id, static_cast<int>(remap.size()));
    }
    auto lookup = [&](long long id) {
      auto it = remap.find(id);
      if (it == remap.end())
        throw Error(ErrorCode::UnknownState, "state " + std::to_string(id) + " not declared");
      return it->second;
    };
    std::vector<int> initial;
    for (const auto& s : j.at("initial")) initial.push_back(lookup(s.get<long long>()));
    if (initial.empty()) throw Error(ErrorCode::NoInitial, "no initial state listed");
    std::vector<Edge> edges;
    for (const auto& je : j.at("edges")) {
      std::vector<int> digits = je.at("digits").get<std::vector<int>>();
      if (static_cast<int>(digits.size()) != d)
        throw Error(ErrorCode::ArityMismatch, "edge digits length " + std::to_string(digits.size()) +
                                                  ", expected " + std::to_string(d));
      for (int v : digits)
        if (v < 0 || v >= k)
          throw Error(ErrorCode::DigitRange, "digit " + std::to_string(v) + " outside [0," +
                                                 std::to_string(k) + ")");
      edges.push_back({lookup(je.at("from").get<long long>()), DigitTuple(digits),
                       lookup(je.at("to").get<long long>())});
    }
    return SetAutomaton(k, d, static_cast<int>(remap.size()), initial, edges);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("bad automaton JSON: ") + e.what());
  }
}

std::string to_json(const KernelPresentation& kp, int indent) {
  json j;
  j["k"] = kp.k;
  j["d"] = kp.d;
  j["n"] = kp.size();
  j["labels"] = kp.labels;
  json elements = json::array();
  for (const DeterministicAutomaton& e : kp.elements)
    elements.push_back(automaton_to_value(e.to_set_automaton()));
  j["elements"] = elements;
  json table = json::array();
  for (int from = 0; from < kp.size(); ++from) {
    for (const auto& [sym, to] : kp.table[static_cast<size_t>(from)]) {
      json entry;
      entry["from"] = from;
      entry["digits"] = DigitTuple::from_code(sym, kp.k, kp.d).to_vector();
      entry["to"] = to;
      table.push_back(entry);
    }
  }
  j["transitions"] = table;
  j["matrix"] = kp.matrix;
  return j.dump(indent);
}

KernelPresentation kernel_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("bad JSON: ") + e.what());
  }
  try {
    KernelPresentation kp;
    kp.k = j.at("k").get<int>();
    kp.d = j.at("d").get<int>();
    check_envelope(kp.k, kp.d);
    int n = j.at("n").get<int>();
    kp.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& je : j.at("elements")) {
      SetAutomaton a = set_automaton_from_json(je.dump());
      kp.elements.push_back(minimize(determinize(a)));
    }
    if (static_cast<int>(kp.elements.size()) != n || static_cast<int>(kp.labels.size()) != n)
      throw Error(ErrorCode::InvalidAutomaton, "kernel element count mismatch");
    kp.table.resize(static_cast<size_t>(n));
    for (const auto& entry : j.at("transitions")) {
      int from = entry.at("from").get<int>();
      int to = entry.at("to").get<int>();
      std::vector<int> digits = entry.at("digits").get<std::vector<int>>();
      if (from < 0 || from >= n || to < 0 || to >= n)
        throw Error(ErrorCode::UnknownState, "kernel transition out of range");
      kp.table[static_cast<size_t>(from)][DigitTuple(digits).code(kp.k)] = to;
    }
    kp.matrix = j.at("matrix").get<std::vector<std::vector<long long>>>();
    if (static_cast<int>(kp.matrix.size()) != n)
      throw Error(ErrorCode::InvalidAutomaton, "kernel matrix size mismatch");
    for (const auto& row : kp.matrix)
      if (static_cast<int>(row.size()) != n)
        throw Error(ErrorCode::InvalidAutomaton, "kernel matrix size mismatch");
    return kp;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("bad kernel JSON: ") + e.what());
  }
}

}  // namespace selfsim

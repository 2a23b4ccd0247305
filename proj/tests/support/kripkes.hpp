#pragma once

#include <set>
#include <vector>

#include "ltlpct/kripke.hpp"

namespace ltlpct::testing {

// One state labelled {a} with a self-loop.
inline KripkeStructure loop_structure() {
  KripkeStructure k;
  k.states = {"s"};
  k.initial = {"s"};
  k.edges = {{"s", "s"}};
  k.labels = {{"s", {"a"}}};
  return k;
}

// {a}, {b}, {a}, ... from u.
inline KripkeStructure alternator() {
  KripkeStructure k;
  k.states = {"u", "v"};
  k.initial = {"u"};
  k.edges = {{"u", "v"}, {"v", "u"}};
  k.labels = {{"u", {"a"}}, {"v", {"b"}}};
  return k;
}

// Empty start, then either an a-loop that may return or an a-sink. Two
// states share a label.
inline KripkeStructure branching() {
  KripkeStructure k;
  k.states = {"s0", "s1", "s2"};
  k.initial = {"s0"};
  k.edges = {{"s0", "s1"}, {"s0", "s2"}, {"s1", "s1"}, {"s1", "s0"}, {"s2", "s2"}};
  k.labels = {{"s1", {"a"}}, {"s2", {"a"}}};
  return k;
}

inline std::vector<KripkeStructure> test_structures() { return {loop_structure(), alternator(), branching()}; }

// Traces by explicit path enumeration.
inline std::set<Word> path_traces(const KripkeStructure& k, std::size_t max_len) {
  std::set<Word> out;
  std::vector<std::vector<std::string>> paths;
  for (const auto& s : k.initial) paths.push_back({s});
  while (!paths.empty()) {
    auto p = paths.back();
    paths.pop_back();
    std::vector<Letter> w;
    for (const auto& s : p) w.push_back(k.label(s));
    out.insert(Word(w));
    if (p.size() == max_len) continue;
    for (const auto& [a, b] : k.edges)
      if (a == p.back()) {
        auto q = p;
        q.push_back(b);
        paths.push_back(q);
      }
  }
  return out;
}

}  // namespace ltlpct::testing

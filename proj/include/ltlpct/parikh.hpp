#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltlpct/nfa.hpp"

namespace ltlpct {

/// sum lhs  cmp  sum rhs + constant, where each term is coeff * (number of
/// positions labelled with the prop).
struct LinearConstraint {
  std::vector<std::pair<Prop, long long>> lhs;
  Cmp cmp = Cmp::Eq;
  std::vector<std::pair<Prop, long long>> rhs;
  long long constant = 0;

  bool holds(const Word& w) const;
  std::string str() const;
};

struct ParikhAutomaton {
  Nfa nfa;
  std::vector<LinearConstraint> constraints;
};

enum class ParikhVerdict { NonEmpty, Empty, Inconclusive };

struct ParikhOptions {
  /// Branch-and-bound node budget per edge of the projected automaton.
  std::size_t nodes_per_edge = 64;
};

struct ParikhResult {
  ParikhVerdict verdict = ParikhVerdict::Empty;
  /// Over nfa.ctx; present iff NonEmpty.
  std::optional<Word> word;
  std::size_t dfa_states = 0;
  std::size_t dfa_edges = 0;
  std::size_t nodes = 0;
  std::size_t lazy_splits = 0;
};

/// Decides whether some accepted word satisfies every constraint.
///
/// The language is projected onto the constrained props and minimised; the
/// projected automaton's Parikh image is encoded as an integer flow (one
/// variable per edge, conservation at every state, one unit leaving through
/// a final state) and solved exactly. Solutions whose support is not
/// connected to the initial state are cut off lazily by branching. A
/// solution becomes a projected word through an Euler path and is lifted
/// back through the original automaton. Empty is a proof; Inconclusive
/// means the node budget ran out.
ParikhResult parikh_emptiness(const ParikhAutomaton& p, const ParikhOptions& opt = {});

}  // namespace ltlpct

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ltlpct/formula.hpp"
#include "ltlpct/word.hpp"

namespace ltlpct {

/// Transition reading `letter`, a mask over the automaton context (bit j is
/// ctx[j]).
struct NfaEdge {
  std::size_t from;
  std::uint64_t letter;
  std::size_t to;
};

/// Finite automaton over 2^ctx. Accepts non-empty words only.
struct Nfa {
  Alphabet ctx;
  std::size_t num_states = 0;
  std::vector<std::size_t> initial;
  std::vector<bool> final;
  std::vector<NfaEdge> edges;

  /// Throws Error if w uses a prop outside ctx.
  bool accepts(const Word& w) const;
  bool accepts_letters(const std::vector<std::uint64_t>& letters) const;
  bool empty() const;
};

/// Largest context ltl_to_nfa accepts; the construction loops over all
/// 2^|ctx| letters per state.
inline constexpr std::size_t kMaxNfaContext = 16;

/// Automaton of the finite-trace models of a pure-LTL formula. States are
/// truth assignments to the temporal part of the closure at one position;
/// reading a word backwards they evolve deterministically. Throws Error on
/// counting operators, props outside ctx, or a context above kMaxNfaContext.
Nfa ltl_to_nfa(const Formula& f, const Alphabet& ctx);

/// Deterministic automaton; missing entries of `next` are -1.
struct Dfa {
  Alphabet ctx;
  std::size_t initial = 0;
  std::vector<bool> final;
  /// next[state][letter]
  std::vector<std::vector<long>> next;

  std::size_t num_states() const { return final.size(); }
  std::size_t num_edges() const;
  bool accepts_letters(const std::vector<std::uint64_t>& letters) const;
};

/// Subset construction on the image of `nfa` under restriction of every
/// letter to `keep` (a subset of nfa.ctx, in this order), followed by
/// minimisation. States that cannot reach a final state are dropped; an
/// empty language gives a single non-final state.
Dfa project_minimal_dfa(const Nfa& nfa, const Alphabet& keep);

/// Restriction of a letter mask over `from` to the props of `to`.
std::uint64_t project_letter(std::uint64_t letter, const Alphabet& from, const Alphabet& to);

/// A word accepted by `nfa` whose restriction to `keep` is `target`, found
/// by a layered search; nullopt if there is none.
std::optional<std::vector<std::uint64_t>> lift_word(const Nfa& nfa, const Alphabet& keep,
                                                    const std::vector<std::uint64_t>& target);

}  // namespace ltlpct
